#include "cislimit/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cislimit {

namespace {

void build_index(std::vector<std::vector<Simplex>>& by_dim,
                 std::vector<std::map<Simplex, std::size_t>>& lookup,
                 const std::set<Simplex>& all) {
  for (const auto& s : all) {
    const std::size_t p = s.size() - 1;
    if (by_dim.size() <= p) by_dim.resize(p + 1);
    by_dim[p].push_back(s);
  }
  lookup.assign(by_dim.size(), {});
  for (std::size_t p = 0; p < by_dim.size(); ++p) {
    std::sort(by_dim[p].begin(), by_dim[p].end());
    for (std::size_t k = 0; k < by_dim[p].size(); ++k) lookup[p].emplace(by_dim[p][k], k);
  }
}

const std::vector<Simplex> no_simplices;

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(std::vector<std::string> vertices,
                                                 const std::vector<Simplex>& facets) {
  SimplicialComplex k;
  std::set<Simplex> all;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
      throw Error("simplex repeats a vertex");
    }
    if (f.empty()) continue;
    if (f.back() >= vertices.size()) throw Error("simplex names an unknown vertex");
    if (f.size() > 24) throw Error("simplex too large");
    const std::size_t n = f.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      Simplex face;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::size_t{1} << b)) face.push_back(f[b]);
      }
      all.insert(std::move(face));
    }
  }
  k.vertices_ = std::move(vertices);
  build_index(k.by_dim_, k.lookup_, all);
  return k;
}

std::size_t SimplicialComplex::count(std::size_t p) const {
  return p < by_dim_.size() ? by_dim_[p].size() : 0;
}

const std::vector<Simplex>& SimplicialComplex::simplices(std::size_t p) const {
  return p < by_dim_.size() ? by_dim_[p] : no_simplices;
}

std::optional<std::size_t> SimplicialComplex::index(const Simplex& s) const {
  if (s.empty() || s.size() > lookup_.size()) return std::nullopt;
  const auto& m = lookup_[s.size() - 1];
  auto it = m.find(s);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

OrderComplex order_complex_of(const FinSpace& space) {
  OrderComplex oc;
  const std::size_t n = space.size();
  oc.vertex_of.assign(n, 0);
  std::vector<std::string> names;
  for (std::size_t x = 0; x < n; ++x) {
    bool found = false;
    for (std::size_t v = 0; v < oc.representative.size(); ++v) {
      if (space.min_open(oc.representative[v]) == space.min_open(x)) {
        oc.vertex_of[x] = v;
        found = true;
        break;
      }
    }
    if (!found) {
      oc.vertex_of[x] = oc.representative.size();
      oc.representative.push_back(x);
      names.push_back(space.id(x));
    }
  }
  const std::size_t nv = oc.representative.size();
  // strictly_below[v] lists the vertices w < v.
  std::vector<std::vector<std::size_t>> strictly_below(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t w = 0; w < nv; ++w) {
      if (w != v && space.below(oc.representative[w], oc.representative[v])) {
        strictly_below[v].push_back(w);
      }
    }
  }
  std::set<Simplex> chains;
  Simplex chain;
  auto extend = [&](auto&& self, std::size_t top) -> void {
    chain.push_back(top);
    Simplex sorted = chain;
    std::sort(sorted.begin(), sorted.end());
    chains.insert(std::move(sorted));
    for (auto w : strictly_below[top]) self(self, w);
    chain.pop_back();
  };
  for (std::size_t v = 0; v < nv; ++v) extend(extend, v);

  oc.complex.vertices_ = std::move(names);
  build_index(oc.complex.by_dim_, oc.complex.lookup_, chains);
  return oc;
}

SimplicialComplex order_complex(const FinSpace& space) {
  return order_complex_of(space).complex;
}

Gf2Matrix boundary_matrix(const SimplicialComplex& k, std::size_t p) {
  if (p == 0) return Gf2Matrix(0, k.count(0));
  Gf2Matrix d(k.count(p - 1), k.count(p));
  const auto& simplices = k.simplices(p);
  for (std::size_t c = 0; c < simplices.size(); ++c) {
    for (std::size_t drop = 0; drop <= p; ++drop) {
      Simplex face;
      for (std::size_t t = 0; t <= p; ++t) {
        if (t != drop) face.push_back(simplices[c][t]);
      }
      d.set(*k.index(face), c);
    }
  }
  return d;
}

std::vector<std::size_t> betti_mod2(const SimplicialComplex& k, std::size_t pmax) {
  std::vector<std::size_t> ranks(pmax + 2, 0);
  for (std::size_t p = 1; p <= pmax + 1; ++p) ranks[p] = rank(boundary_matrix(k, p));
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p <= pmax; ++p) {
    out.push_back(k.count(p) - ranks[p] - ranks[p + 1]);
  }
  return out;
}

std::size_t h0_rank(const FinSpace& space) { return components(space).size(); }

namespace {

void require_continuous(const FinMap& m, const char* what) {
  if (!m.profile().continuous) {
    throw Error(std::string(what) + ": map is not continuous");
  }
}

}  // namespace

Gf2Matrix component_matrix(const FinMap& m) {
  require_continuous(m, "component_matrix");
  const auto src = components(m.source());
  const auto dst = components(m.target());
  Gf2Matrix out(dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    const auto x = src[c].find_first();
    const auto y = m(x);
    for (std::size_t r = 0; r < dst.size(); ++r) {
      if (dst[r].test(y)) out.set(r, c);
    }
  }
  return out;
}

HomologyBasis::HomologyBasis(const FinSpace& space, std::size_t p)
    : p_(p), oc_(order_complex_of(space)), reducer_(0, 0) {
  const auto& k = oc_.complex;
  const std::size_t np = k.count(p);
  boundary_ = boundary_matrix(k, p);
  const auto up = boundary_matrix(k, p + 1);
  const auto cycles = kernel_basis(boundary_);
  const std::size_t dim = cycles.size() - rank(up);
  reducer_ = Gf2Reducer(np, dim);
  for (std::size_t c = 0; c < up.cols(); ++c) {
    auto r = reducer_.reduce(up.column(c));
    if (r.residual.any()) reducer_.insert(std::move(r));
  }
  for (const auto& z : cycles) {
    auto r = reducer_.reduce(z);
    if (r.residual.none()) continue;
    r.tag.set(generators_.size());
    generators_.push_back(z);
    reducer_.insert(std::move(r));
  }
}

Gf2Vector HomologyBasis::coordinates(const Gf2Vector& cycle) const {
  if (cycle.size() != oc_.complex.count(p_)) throw Error("chain has wrong length");
  for (std::size_t r = 0; r < boundary_.rows(); ++r) {
    if ((boundary_.row(r) & cycle).count() % 2 != 0) throw Error("chain is not a cycle");
  }
  auto red = reducer_.reduce(cycle);
  if (red.residual.any()) throw Error("cycle outside the computed cycle space");
  return red.tag;
}

Gf2Matrix induced_matrix(const FinMap& m, std::size_t p) {
  require_continuous(m, "induced_matrix");
  const HomologyBasis src(m.source(), p);
  const HomologyBasis dst(m.target(), p);
  const auto& ks = src.complex().complex;
  const auto& kt = dst.complex().complex;
  Gf2Matrix out(dst.dimension(), src.dimension());
  const auto& simplices = ks.simplices(p);
  for (std::size_t g = 0; g < src.dimension(); ++g) {
    const auto& gen = src.generators()[g];
    Gf2Vector image(kt.count(p));
    for (auto s = gen.find_first(); s != Gf2Vector::npos; s = gen.find_next(s)) {
      Simplex t;
      for (auto v : simplices[s]) {
        t.push_back(dst.complex().vertex_of[m(src.complex().representative[v])]);
      }
      std::sort(t.begin(), t.end());
      if (std::adjacent_find(t.begin(), t.end()) != t.end()) continue;
      const auto idx = kt.index(t);
      if (!idx) throw Error("induced_matrix: image of a chain is not a chain");
      image.flip(*idx);
    }
    out.set_column(g, dst.coordinates(image));
  }
  return out;
}

void GF2ModuleSeq::check() const {
  if (dims.empty()) throw Error("module sequence is empty");
  if (maps.size() + 1 != dims.size()) {
    throw Error("module sequence needs one map fewer than modules");
  }
  for (std::size_t n = 0; n < maps.size(); ++n) {
    const bool co = variance == Variance::covariant;
    const std::size_t rows = co ? dims[n + 1] : dims[n];
    const std::size_t cols = co ? dims[n] : dims[n + 1];
    if (maps[n].rows() != rows || maps[n].cols() != cols) {
      throw Error("module sequence map " + std::to_string(n) + " has the wrong shape");
    }
  }
}

GF2ModuleSeq dual(const GF2ModuleSeq& s) {
  GF2ModuleSeq d;
  d.dims = s.dims;
  for (const auto& m : s.maps) d.maps.push_back(m.transpose());
  d.variance = s.variance == Variance::covariant ? Variance::contravariant
                                                 : Variance::covariant;
  return d;
}

ModuleCone module_colimit(const GF2ModuleSeq& s) {
  s.check();
  if (s.variance != Variance::covariant) throw Error("colimit needs a covariant sequence");
  const std::size_t last = s.dims.size() - 1;
  ModuleCone cone;
  cone.dim = s.dims[last];
  cone.legs.resize(s.dims.size());
  cone.legs[last] = Gf2Matrix::identity(cone.dim);
  for (std::size_t n = last; n-- > 0;) cone.legs[n] = cone.legs[n + 1] * s.maps[n];
  return cone;
}

ModuleCone module_limit(const GF2ModuleSeq& s) {
  s.check();
  if (s.variance != Variance::contravariant) {
    throw Error("limit needs a contravariant sequence");
  }
  const std::size_t last = s.dims.size() - 1;
  ModuleCone cone;
  cone.dim = s.dims[last];
  cone.legs.resize(s.dims.size());
  cone.legs[last] = Gf2Matrix::identity(cone.dim);
  for (std::size_t n = last; n-- > 0;) cone.legs[n] = s.maps[n] * cone.legs[n + 1];
  return cone;
}

std::string InvarianceReport::summary() const {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream os;
  os << "p=" << p << " limit_dim=" << limit_dim << " module_dim=" << module_dim
     << " exists=" << yn(exists) << " unique=" << yn(unique)
     << " isomorphism=" << yn(isomorphism) << " " << (passed() ? "PASS" : "FAIL");
  return os.str();
}

GF2ModuleSeq homology_sequence(const Cis& c, std::size_t p) {
  if (!is_inductive(c)) throw Error("homology sequence needs an inductive system");
  GF2ModuleSeq s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s.dims.push_back(HomologyBasis(c.space(i), p).dimension());
  }
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    s.maps.push_back(induced_matrix(c.total_map(i), p));
  }
  return s;
}

namespace {

void finish(InvarianceReport& r, const Gf2Matrix& h, std::size_t stacked_rank) {
  r.exists = true;
  r.unique = stacked_rank == r.limit_dim;
  r.isomorphism = h.rows() == h.cols() && rank(h) == h.rows();
  r.h = h;
}

}  // namespace

InvarianceReport functorial_invariance_check(const Cis& c, std::size_t p) {
  if (!is_inductive(c)) throw Error("invariance check needs an inductive system");
  const auto ls = build_fundamental(c);
  const auto seq = homology_sequence(c, p);
  const auto cone = module_colimit(seq);
  InvarianceReport r;
  r.p = p;
  r.limit_dim = HomologyBasis(*ls.x, p).dimension();
  r.module_dim = cone.dim;
  Gf2Matrix a(r.limit_dim, 0);
  Gf2Matrix psi(r.module_dim, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    a = hconcat(a, induced_matrix(ls.phis[i], p));
    psi = hconcat(psi, cone.legs[i]);
  }
  // h a = psi; unique when the rows of a are independent.
  const auto h = solve_left(a, psi);
  if (h) finish(r, *h, rank(a));
  return r;
}

InvarianceReport counter_functorial_check(const Cis& c, std::size_t p) {
  if (!is_inductive(c)) throw Error("invariance check needs an inductive system");
  const auto ls = build_fundamental(c);
  const auto seq = dual(homology_sequence(c, p));
  const auto cone = module_limit(seq);
  InvarianceReport r;
  r.p = p;
  r.limit_dim = HomologyBasis(*ls.x, p).dimension();
  r.module_dim = cone.dim;
  Gf2Matrix a(0, r.limit_dim);
  Gf2Matrix psi(0, r.module_dim);
  for (std::size_t i = 0; i < c.size(); ++i) {
    a = vconcat(a, induced_matrix(ls.phis[i], p).transpose());
    psi = vconcat(psi, cone.legs[i]);
  }
  // a h = psi; unique when the columns of a are independent.
  const auto h = solve_right(a, psi);
  if (h) finish(r, *h, rank(a));
  return r;
}

}  // namespace cislimit

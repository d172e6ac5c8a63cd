#include "cislimit/limit.hpp"

#include <numeric>
#include <sstream>

namespace cislimit {

namespace {

class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> rank_;
};

std::string at_stage(std::size_t i) { return "stage " + std::to_string(i); }

std::string at_pair(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_shape(const Cis& c, const LimitSpace& ls) {
  if (!ls.x) throw Error("limit space without a space");
  if (ls.phis.size() != c.size()) {
    throw Error("limit space has " + std::to_string(ls.phis.size()) +
                " maps for " + std::to_string(c.size()) + " stages");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& phi = ls.phis[i];
    if (phi.source_ptr() != c.space_ptr(i) && phi.source() != c.space(i)) {
      throw Error("phi_" + std::to_string(i) + " is not defined on X_" +
                  std::to_string(i));
    }
    if (phi.target_ptr() != ls.x && phi.target() != *ls.x) {
      throw Error("phi_" + std::to_string(i) + " does not land in X");
    }
  }
}

// Indices checked pairwise: all represented stages plus one virtual stage
// for stationary systems (further virtual stages repeat it).
std::size_t checked_stages(const Cis& c) {
  return c.size() + (c.stationary() ? 1 : 0);
}

AxiomCheck check_cover(const LimitSpace& ls) {
  AxiomCheck out{"L.1", true, {}};
  PointSet covered = ls.x->none();
  for (const auto& phi : ls.phis) covered |= phi.image();
  if (!covered.all()) {
    out.pass = false;
    for (auto x = (~covered).find_first(); x != PointSet::npos;
         x = (~covered).find_next(x)) {
      out.witnesses.push_back("point '" + ls.x->id(x) + "' is not covered");
    }
  }
  return out;
}

AxiomCheck check_embeddings(const LimitSpace& ls) {
  AxiomCheck out{"L.2", true, {}};
  for (std::size_t i = 0; i < ls.phis.size(); ++i) {
    const auto& p = ls.phis[i].profile();
    if (!p.embedding) {
      out.pass = false;
      out.witnesses.push_back(at_stage(i) + ": phi is not an embedding" +
                              (p.injective ? "" : " (not injective)") +
                              (p.continuous ? "" : " (not continuous)"));
    }
  }
  return out;
}

}  // namespace

bool AxiomReport::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

const AxiomCheck* AxiomReport::find(std::string_view axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return &c;
  }
  return nullptr;
}

bool AxiomReport::passed(std::string_view axiom) const {
  const auto* c = find(axiom);
  return c && c->pass;
}

std::string AxiomReport::summary() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << c.axiom << ": " << (c.pass ? "pass" : "FAIL") << "\n";
    for (const auto& w : c.witnesses) os << "  " << w << "\n";
  }
  return os.str();
}

AttachingSpace glue_chain(std::span<const SpacePtr> spaces,
                          std::span<const std::vector<std::size_t>> steps) {
  if (spaces.empty()) throw Error("glue_chain: no spaces");
  if (steps.size() + 1 < spaces.size()) {
    throw Error("glue_chain: missing gluing maps");
  }
  auto sum = coproduct(spaces);
  DisjointSet classes(sum.space->size());
  for (std::size_t n = 0; n + 1 < spaces.size(); ++n) {
    const auto& step = steps[n];
    if (step.size() != spaces[n]->size()) {
      throw Error("glue_chain: gluing map " + std::to_string(n) +
                  " has wrong width");
    }
    for (std::size_t x = 0; x < step.size(); ++x) {
      if (step[x] == no_point) continue;
      if (step[x] >= spaces[n + 1]->size()) {
        throw Error("glue_chain: gluing map " + std::to_string(n) +
                    " leaves the next space");
      }
      classes.unite(sum.injections[n](x), sum.injections[n + 1](step[x]));
    }
  }
  std::vector<std::size_t> labels(sum.space->size());
  for (std::size_t p = 0; p < labels.size(); ++p) labels[p] = classes.find(p);
  auto q = quotient_by_labels(sum.space, labels);

  LimitSpace limit{q.space, {}};
  for (const auto& inj : sum.injections) {
    limit.phis.push_back(compose(q.projection, inj));
  }
  return {std::move(sum), std::move(q.projection), std::move(limit)};
}

AttachingSpace attaching_space(const Cis& c) {
  std::vector<SpacePtr> spaces;
  std::vector<std::vector<std::size_t>> steps;
  for (std::size_t i = 0; i < c.size(); ++i) {
    spaces.push_back(c.space_ptr(i));
    if (i + 1 < c.size()) steps.push_back(c.step_table(i));
  }
  return glue_chain(spaces, steps);
}

LimitSpace build_fundamental(const Cis& c) {
  const auto v = validate_cis(c);
  if (!v.ok()) {
    const auto& first = v.issues.front();
    throw Error("invalid system: " + at_stage(first.stage) + ": clause '" +
                first.clause + "' fails" +
                (first.detail.empty() ? "" : " (" + first.detail + ")"));
  }
  auto att = attaching_space(c);
  const auto axioms = verify_limit_axioms(c, att.limit);
  if (!axioms.passed()) {
    throw Error("attaching space violates the limit axioms:\n" + axioms.summary());
  }
  if (!has_weak_topology(c, att.limit)) {
    throw Error("attaching space does not carry the weak topology");
  }
  return std::move(att.limit);
}

namespace {

struct PairData {
  PointSet img_i;
  PointSet img_j;
  bool gate = false;  // f_i and f_{j-1} semicomponible
  std::optional<CompositeInjection> glue;
};

PairData pair_data(const Cis& c, const LimitSpace& ls, std::size_t i,
                   std::size_t j) {
  PairData d{ls.phi(c, i).image(), ls.phi(c, j).image(), false, std::nullopt};
  d.gate = semicomponible(c, i, j - 1);
  if (d.gate) d.glue = composite(c, i, j - 1);
  return d;
}

AxiomCheck check_disjoint_when_not_gated(const Cis& c, const LimitSpace& ls,
                                         std::span<const PairData> pairs) {
  AxiomCheck out{"L.4", true, {}};
  const auto k = checked_stages(c);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j, ++idx) {
      const auto& d = pairs[idx];
      if (d.gate) continue;
      const auto meet = d.img_i & d.img_j;
      if (meet.any()) {
        out.pass = false;
        out.witnesses.push_back(at_pair(i, j) + ": images meet at '" +
                                ls.x->id(meet.find_first()) +
                                "' although f_i and f_{j-1} are not semicomponible");
      }
    }
  }
  return out;
}

std::vector<PairData> all_pairs(const Cis& c, const LimitSpace& ls) {
  std::vector<PairData> out;
  const auto k = checked_stages(c);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) out.push_back(pair_data(c, ls, i, j));
  }
  return out;
}

}  // namespace

AxiomReport verify_limit_axioms(const Cis& c, const LimitSpace& ls) {
  check_shape(c, ls);
  AxiomReport r;
  r.checks.push_back(check_cover(ls));
  r.checks.push_back(check_embeddings(ls));

  const auto pairs = all_pairs(c, ls);
  AxiomCheck l3{"L.3", true, {}};
  const auto k = checked_stages(c);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j, ++idx) {
      const auto& d = pairs[idx];
      if (!d.gate) continue;
      const auto& glue = *d.glue;
      const auto& phi_i = ls.phi(c, i);
      const auto& phi_j = ls.phi(c, j);
      const auto meet = d.img_i & d.img_j;
      const auto glued = phi_j.image(glue.image());
      if (meet != glued) {
        l3.pass = false;
        l3.witnesses.push_back(at_pair(i, j) +
                               ": image intersection differs from phi_j f_{i,j-1}(Y_{i,j-1})");
      }
      // Pointwise clause.
      for (std::size_t xi = 0; xi < c.space(i).size(); ++xi) {
        for (std::size_t xj = 0; xj < c.space(j).size(); ++xj) {
          if (phi_i(xi) != phi_j(xj)) continue;
          if (!glue.domain.test(xi) || glue.table[xi] != xj) {
            l3.pass = false;
            l3.witnesses.push_back(at_pair(i, j) + ": phi_i('" +
                                   c.space(i).id(xi) + "') = phi_j('" +
                                   c.space(j).id(xj) +
                                   "') off the gluing locus");
          }
        }
      }
    }
  }
  r.checks.push_back(std::move(l3));
  r.checks.push_back(check_disjoint_when_not_gated(c, ls, pairs));
  return r;
}

AxiomReport verify_L5_L6(const Cis& c, const LimitSpace& ls) {
  check_shape(c, ls);
  AxiomReport r;
  r.checks.push_back(check_cover(ls));
  r.checks.push_back(check_embeddings(ls));

  const auto pairs = all_pairs(c, ls);
  r.checks.push_back(check_disjoint_when_not_gated(c, ls, pairs));

  AxiomCheck l5{"L.5", true, {}};
  AxiomCheck l6{"L.6", true, {}};
  const auto k = checked_stages(c);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j, ++idx) {
      const auto& d = pairs[idx];
      if (!d.gate) continue;
      const auto& glue = *d.glue;
      const auto& phi_i = ls.phi(c, i);
      const auto& phi_j = ls.phi(c, j);
      for (auto y = glue.domain.find_first(); y != PointSet::npos;
           y = glue.domain.find_next(y)) {
        if (phi_j(glue.table[y]) != phi_i(y)) {
          l5.pass = false;
          l5.witnesses.push_back(at_pair(i, j) + ": phi_j f_{i,j-1}('" +
                                 c.space(i).id(y) + "') != phi_i('" +
                                 c.space(i).id(y) + "')");
        }
      }
      const auto rest_i = phi_i.image(c.space(i).all() - glue.domain);
      const auto rest_j = phi_j.image(c.space(j).all() - glue.image());
      const auto meet = rest_i & rest_j;
      if (meet.any()) {
        l6.pass = false;
        l6.witnesses.push_back(at_pair(i, j) + ": images off the gluing locus meet at '" +
                               ls.x->id(meet.find_first()) + "'");
      }
    }
  }
  r.checks.push_back(std::move(l5));
  r.checks.push_back(std::move(l6));
  return r;
}

bool has_weak_topology(const Cis& c, const LimitSpace& ls) {
  check_shape(c, ls);
  return final_space(*ls.x, ls.phis) == *ls.x;
}

ImagesClosed images_closed(const LimitSpace& ls) {
  ImagesClosed out;
  for (std::size_t i = 0; i < ls.phis.size(); ++i) {
    if (!ls.x->is_closed(ls.phis[i].image())) {
      out.all_closed = false;
      out.open_stages.push_back(i);
    }
  }
  return out;
}

CanonicalBijection canonical_bijection(const Cis& c, const LimitSpace& a,
                                       const LimitSpace& b) {
  if (!verify_limit_axioms(c, a).passed()) {
    throw Error("canonical_bijection: first candidate is not a limit space");
  }
  if (!verify_limit_axioms(c, b).passed()) {
    throw Error("canonical_bijection: second candidate is not a limit space");
  }
  const auto n = a.x->size();
  std::vector<std::size_t> to(n, no_point);
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t xi = 0; xi < c.space(i).size(); ++xi) {
      const auto x = a.phis[i](xi);
      const auto z = b.phis[i](xi);
      if (to[x] == no_point) {
        to[x] = z;
      } else if (to[x] != z) {
        throw Error("canonical_bijection: not well defined at '" + a.x->id(x) + "'");
      }
    }
  }
  CanonicalBijection out{FinMap(a.x, b.x, std::move(to)), false, false};
  const auto& p = out.beta.profile();
  if (!p.injective || !p.surjective) {
    throw Error("canonical_bijection: beta is not bijective");
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (compose(out.beta, a.phis[i]) != b.phis[i]) {
      throw Error("canonical_bijection: psi_i != beta . phi_i");
    }
  }
  out.continuous = p.continuous;
  out.homeomorphism = out.beta.is_homeomorphism();
  if (!out.homeomorphism && has_weak_topology(c, a) && has_weak_topology(c, b)) {
    throw Error("canonical_bijection: two fundamental limits are not homeomorphic via beta");
  }
  return out;
}

CoverProfile cover_profile(const LimitSpace& ls) {
  CoverProfile out;
  std::vector<PointSet> images;
  for (const auto& phi : ls.phis) images.push_back(phi.image());
  out.closed_cover = true;
  for (const auto& img : images) {
    if (!ls.x->is_closed(img)) out.closed_cover = false;
  }
  // Counts are bounded by the number of represented stages.
  std::size_t pointwise = 0;
  std::size_t local = 0;
  for (std::size_t x = 0; x < ls.x->size(); ++x) {
    std::size_t at = 0;
    std::size_t near = 0;
    for (const auto& img : images) {
      if (img.test(x)) ++at;
      if (img.intersects(ls.x->min_open(x))) ++near;
    }
    pointwise = std::max(pointwise, at);
    local = std::max(local, near);
  }
  out.pointwise_finite = pointwise <= images.size();
  out.locally_finite = local <= images.size();
  return out;
}

bool is_perfect_map(const FinMap& m) {
  const auto& p = m.profile();
  return p.continuous && p.closed && p.surjective;
}

}  // namespace cislimit

#include "cislimit/fuzz.hpp"

#include "cislimit/gallery.hpp"
#include "cislimit/homology.hpp"
#include "cislimit/io.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>

namespace cislimit {

namespace {

std::vector<PointSet> transitive(std::vector<PointSet> up) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < up.size(); ++a) {
      PointSet grown = up[a];
      for (auto b = up[a].find_first(); b != PointSet::npos; b = up[a].find_next(b)) {
        grown |= up[b];
      }
      if (grown != up[a]) {
        up[a] = std::move(grown);
        changed = true;
      }
    }
  }
  return up;
}

std::vector<std::size_t> permutation(FuzzRng& rng, std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t k = n; k > 1; --k) std::swap(p[k - 1], p[rng.below(k)]);
  return p;
}

// Rebuilds `ls` on a new space with ids `ids` (by old position) and minimal
// open sets `up` (by old position).
LimitSpace rebuild(const LimitSpace& ls, const std::vector<std::string>& ids,
                   const std::vector<PointSet>& up) {
  auto space = make_space(FinSpace::from_min_open(ids, up));
  std::vector<std::size_t> pos(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) pos[k] = space->index_of(ids[k]);
  LimitSpace out{space, {}};
  for (const auto& phi : ls.phis) {
    std::vector<std::size_t> t(phi.source().size());
    for (std::size_t x = 0; x < t.size(); ++x) t[x] = pos[phi(x)];
    out.phis.push_back(FinMap(phi.source_ptr(), space, std::move(t)));
  }
  return out;
}

}  // namespace

SpacePtr random_space(FuzzRng& rng, std::size_t n, const std::string& prefix,
                      std::size_t density) {
  std::vector<PointSet> up(n, PointSet(n));
  for (std::size_t a = 0; a < n; ++a) {
    up[a].set(a);
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && rng.chance(density, 100)) up[a].set(b);
    }
  }
  std::vector<std::string> ids;
  for (std::size_t k = 0; k < n; ++k) ids.push_back(prefix + std::to_string(k));
  return make_space(FinSpace::from_min_open(ids, transitive(std::move(up))));
}

PointSet random_closed(FuzzRng& rng, const FinSpace& x) {
  PointSet s = x.none();
  for (std::size_t p = 0; p < x.size(); ++p) {
    if (rng.chance(2, 5)) s |= x.point_closure(p);
  }
  return s;
}

Cis random_cis(FuzzRng& rng, const CisShape& shape) {
  const std::size_t stages = rng.between(1, shape.max_stages);
  const bool stationary = rng.chance(shape.stationary_in_4, 4);
  const std::size_t density = shape.discrete ? 0 : 25;

  std::vector<SpacePtr> spaces(stages);
  std::vector<PointSet> ys(stages);
  std::vector<std::vector<std::size_t>> tables(stages);

  const auto last = stages - 1;
  spaces[last] = random_space(rng, rng.between(1, shape.max_points),
                              "s" + std::to_string(last) + "_", density);
  ys[last] = (stationary || shape.inductive) ? spaces[last]->all()
                                             : random_closed(rng, *spaces[last]);

  for (std::size_t i = last; i-- > 0;) {
    const auto& next = *spaces[i + 1];
    PointSet c = random_closed(rng, next);
    if (shape.inductive && c.none()) c = next.point_closure(rng.below(next.size()));
    std::vector<std::size_t> cpts;
    for (auto p = c.find_first(); p != PointSet::npos; p = c.find_next(p)) cpts.push_back(p);
    const std::size_t nc = cpts.size();
    std::size_t extras = 0;
    if (!shape.inductive) {
      const std::size_t room = shape.max_points > nc ? shape.max_points - nc : 0;
      extras = rng.between(nc == 0 ? 1 : 0, std::max<std::size_t>(room, nc == 0 ? 1 : 0));
    }
    const std::size_t n = nc + extras;
    const auto ex = random_space(rng, extras, "e", density);

    // Positions: copy points first, then extras.
    std::vector<PointSet> up(n, PointSet(n));
    std::vector<PointSet> from_extras(nc, PointSet(n));
    for (std::size_t j = 0; j < nc; ++j) {
      for (std::size_t k = 0; k < nc; ++k) {
        if (next.min_open(cpts[j]).test(cpts[k])) up[j].set(k);
      }
      if (shape.discrete) continue;
      for (std::size_t e = 0; e < extras; ++e) {
        if (!rng.chance(3, 10)) continue;
        const auto& ue = ex->min_open(e);
        for (auto f = ue.find_first(); f != PointSet::npos; f = ue.find_next(f)) {
          from_extras[j].set(nc + f);
        }
      }
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < nc; ++j) {
        for (auto k = up[j].find_first(); k != PointSet::npos; k = up[j].find_next(k)) {
          if (!from_extras[k].is_subset_of(from_extras[j])) {
            from_extras[j] |= from_extras[k];
            changed = true;
          }
        }
      }
    }
    for (std::size_t j = 0; j < nc; ++j) up[j] |= from_extras[j];
    for (std::size_t e = 0; e < extras; ++e) {
      const auto& ue = ex->min_open(e);
      for (auto f = ue.find_first(); f != PointSet::npos; f = ue.find_next(f)) {
        up[nc + e].set(nc + f);
      }
    }

    const auto names = permutation(rng, n);
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < n; ++k) {
      ids.push_back("s" + std::to_string(i) + "_" + std::to_string(names[k]));
    }
    spaces[i] = make_space(FinSpace::from_min_open(ids, up));
    const auto& x = *spaces[i];
    ys[i] = x.none();
    tables[i].assign(n, no_point);
    for (std::size_t j = 0; j < nc; ++j) {
      const auto p = x.index_of(ids[j]);
      ys[i].set(p);
      tables[i][p] = cpts[j];
    }
  }

  std::vector<Stage> out;
  for (std::size_t i = 0; i < stages; ++i) {
    out.push_back(make_stage(spaces[i], ys[i], i < last ? spaces[i + 1] : nullptr, tables[i]));
  }
  return Cis(std::move(out), stationary ? Tail::stationary(last) : Tail::cutoff());
}

LimitSpace relabel_limit(FuzzRng& rng, const LimitSpace& ls, const std::string& prefix) {
  const auto& x = *ls.x;
  const auto names = permutation(rng, x.size());
  std::vector<std::string> ids;
  std::vector<PointSet> up;
  for (std::size_t k = 0; k < x.size(); ++k) {
    ids.push_back(prefix + std::to_string(names[k]));
    up.push_back(x.min_open(k));
  }
  return rebuild(ls, ids, up);
}

LimitSpace mutate_limit(FuzzRng& rng, const LimitSpace& ls) {
  const auto& x = *ls.x;
  const std::size_t n = x.size();
  std::size_t kind = rng.below(3);

  if (kind == 2) {
    std::vector<std::pair<std::size_t, std::size_t>> open_pairs;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (!x.min_open(a).test(b)) open_pairs.emplace_back(a, b);
      }
    }
    if (open_pairs.empty()) {
      kind = 1;
    } else {
      const auto [a, b] = open_pairs[rng.below(open_pairs.size())];
      std::vector<PointSet> up;
      for (std::size_t k = 0; k < n; ++k) up.push_back(x.min_open(k));
      up[a].set(b);
      return rebuild(ls, x.ids(), transitive(std::move(up)));
    }
  }
  if (kind == 1 && n > 1) {
    auto out = ls;
    const std::size_t i = rng.below(out.phis.size());
    auto t = out.phis[i].assignment();
    const std::size_t p = rng.below(t.size());
    t[p] = (t[p] + 1 + rng.below(n - 1)) % n;
    out.phis[i] = FinMap(out.phis[i].source_ptr(), out.x, std::move(t));
    return out;
  }
  // An extra point nothing maps to.
  auto ids = x.ids();
  std::string extra = "extra";
  while (x.find(extra)) extra += "'";
  ids.push_back(extra);
  std::vector<PointSet> up;
  for (std::size_t k = 0; k < n; ++k) {
    auto u = x.min_open(k);
    u.resize(n + 1);
    up.push_back(std::move(u));
  }
  PointSet u(n + 1);
  u.set(n);
  up.push_back(std::move(u));
  auto space = make_space(FinSpace::from_min_open(ids, up));
  LimitSpace out{space, {}};
  for (const auto& phi : ls.phis) {
    std::vector<std::size_t> t(phi.source().size());
    for (std::size_t k = 0; k < t.size(); ++k) t[k] = space->index_of(x.id(phi(k)));
    out.phis.push_back(FinMap(phi.source_ptr(), space, std::move(t)));
  }
  return out;
}

CisMorphism random_morphism(FuzzRng& rng, const CisPtr& c) {
  switch (rng.below(4)) {
    case 0:
      return identity_morphism(c);
    case 1:
      return relabel_morphism(c, "'");
    case 2:
      return limit_cocone_morphism(c);
    default:
      return collapse_morphism(c);
  }
}

CisDiagram random_diagram(FuzzRng& rng, const CisPtr& c) {
  CisDiagram d;
  d.objects.push_back(c);
  const std::size_t n = rng.between(2, 4);
  for (std::size_t k = 1; k < n; ++k) {
    auto m = random_morphism(rng, d.objects.back());
    d.objects.push_back(m.target);
    d.arrows.push_back(std::move(m));
  }
  return d;
}

bool FuzzReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const FuzzCheck& c) { return c.failed == 0; });
}

const FuzzCheck* FuzzReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::string FuzzReport::text() const {
  std::ostringstream os;
  os << "fuzz seed=" << seed << " count=" << count << "\n";
  for (const auto& c : checks) {
    if (c.tally) {
      os << c.name << ": " << c.passed << "\n";
      continue;
    }
    os << c.name << ": " << c.passed << "/" << (c.passed + c.failed)
       << (c.failed == 0 ? " pass" : " FAIL") << "\n";
    if (c.failed != 0) os << "  first failure: " << c.first_failure << "\n";
  }
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

namespace {

class Harness {
 public:
  explicit Harness(FuzzReport& r) : report_(r) {}

  void record(const std::string& name, bool ok, const std::string& what) {
    auto& c = get(name);
    if (ok) {
      ++c.passed;
    } else {
      if (c.failed == 0) c.first_failure = what;
      ++c.failed;
    }
  }

  // Runs `body`, which records its own outcomes; an exception is a failure.
  void guard(const std::string& name, const std::string& where,
             const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(name, false, where + ": " + e.what());
    }
  }

  // Counter for a quantity that is reported, not judged.
  void tally(const std::string& name, std::size_t by = 1) {
    auto& c = get(name);
    c.tally = true;
    c.passed += by;
  }

 private:
  FuzzCheck& get(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return report_.checks[it->second];
    index_.emplace(name, report_.checks.size());
    report_.checks.push_back({name, 0, 0, {}, false});
    return report_.checks.back();
  }

  FuzzReport& report_;
  std::map<std::string, std::size_t> index_;
};

bool closure_laws(FuzzRng& rng, const FinSpace& x) {
  for (int t = 0; t < 8; ++t) {
    PointSet a = x.none();
    PointSet b = x.none();
    for (std::size_t p = 0; p < x.size(); ++p) {
      a.set(p, rng.chance(1, 2));
      b.set(p, rng.chance(1, 2));
    }
    const auto ca = x.closure(a);
    if (!x.closure(x.none()).none()) return false;
    if (!a.is_subset_of(ca) || x.closure(ca) != ca) return false;
    if (x.closure(a | b) != (ca | x.closure(b))) return false;
  }
  return true;
}

std::string stage_label(std::size_t k) { return "system " + std::to_string(k); }

}  // namespace

FuzzReport run_fuzz(std::size_t count, std::uint64_t seed) {
  FuzzReport report;
  report.seed = seed;
  report.count = count;
  Harness h(report);
  FuzzRng rng(seed);

  for (std::size_t k = 0; k < count; ++k) {
    const auto where = stage_label(k);
    CisShape shape;
    shape.discrete = k % 5 == 4;
    auto c = std::make_shared<const Cis>(random_cis(rng, shape));

    for (std::size_t i = 0; i < c->size(); ++i) {
      const auto& x = c->space(i);
      h.record("closure-laws", closure_laws(rng, x), where);
      h.record("h0-equals-b0", h0_rank(x) == betti_mod2(order_complex(x), 0)[0], where);
    }

    h.guard("semicomponible-monotone", where, [&] {
      bool ok = true;
      const std::size_t n = c->size();
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
          const bool s = semicomponible(*c, i, j);
          for (std::size_t a = i; a <= j && ok; ++a) {
            for (std::size_t b = a; b <= j && ok; ++b) {
              if (s && !semicomponible(*c, a, b)) ok = false;
            }
          }
          for (std::size_t l = j + 1; l < n && ok; ++l) {
            if (!s && semicomponible(*c, i, l)) ok = false;
          }
        }
      }
      h.record("semicomponible-monotone", ok, where);
    });

    LimitSpace fund;
    std::optional<AttachingSpace> att;
    bool built = false;
    h.guard("construction", where, [&] {
      att.emplace(attaching_space(*c));
      fund = build_fundamental(*c);
      const bool ok = verify_limit_axioms(*c, fund).passed() &&
                      verify_L5_L6(*c, fund).passed() && has_weak_topology(*c, fund) &&
                      images_closed(fund).all_closed;
      h.record("construction", ok, where);
      built = true;
    });
    if (!built) continue;

    std::vector<LimitSpace> candidates{fund};
    for (int m = 0; m < 2; ++m) {
      h.guard("axiom-equivalence", where, [&] {
        auto mutant = mutate_limit(rng, fund);
        const bool a = verify_limit_axioms(*c, mutant).passed();
        const bool b = verify_L5_L6(*c, mutant).passed();
        h.record("axiom-equivalence", a == b, where + " (mutant)");
        if (!a) h.tally("mutants-rejected");
        candidates.push_back(std::move(mutant));
      });
    }
    h.record("axiom-equivalence",
             verify_limit_axioms(*c, fund).passed() == verify_L5_L6(*c, fund).passed(), where);

    if (fund.x->size() <= 5) {
      h.guard("non-fundamental-search", where, [&] {
        auto s = search_non_fundamental(*c, 5);
        h.tally("non-fundamental-found", s.found.size());
        for (auto& f : s.found) candidates.push_back(std::move(f));
        h.record("non-fundamental-search", s.status != SearchStatus::undecided, where);
      });
    }

    for (const auto& cand : candidates) {
      h.guard("weak-implies-closed", where, [&] {
        if (!verify_limit_axioms(*c, cand).passed()) return;
        const bool weak = has_weak_topology(*c, cand);
        h.record("weak-implies-closed", !weak || images_closed(cand).all_closed, where);
        if (cover_profile(cand).all()) {
          h.record("closed-cover-implies-weak", weak, where);
        }
      });
    }

    h.guard("uniqueness", where, [&] {
      const auto a = relabel_limit(rng, fund, "u");
      const auto b = relabel_limit(rng, fund, "v");
      const auto ab = canonical_bijection(*c, a, b);
      const auto fa = canonical_bijection(*c, fund, a);
      const auto fb = canonical_bijection(*c, fund, b);
      bool ok = ab.homeomorphism && fa.homeomorphism && fb.homeomorphism;
      for (std::size_t i = 0; i < c->size(); ++i) {
        ok = ok && compose(ab.beta, a.phis[i]) == b.phis[i];
      }
      ok = ok && compose(ab.beta, fa.beta) == fb.beta;
      h.record("uniqueness", ok, where);
    });

    h.guard("perfect-rho", where, [&] {
      h.record("perfect-rho", is_perfect_map(att->rho), where);
      if (is_finitely_semicomponible(*c).value) {
        h.record("locally-finite-cover", cover_profile(fund).locally_finite, where);
      }
    });

    if (shape.discrete) {
      h.record("discrete-transfer", separation_profile(*fund.x).discrete, where);
    }

    h.guard("functor-laws", where, [&] {
      const auto hm = random_morphism(rng, c);
      const auto km = random_morphism(rng, hm.target);
      const auto l0 = build_fundamental(*c);
      const auto l1 = build_fundamental(*hm.target);
      const auto l2 = build_fundamental(*km.target);
      const auto id = induced_fundamental_map(identity_morphism(c), l0, l0);
      const auto lh = induced_fundamental_map(hm, l0, l1);
      const auto lk = induced_fundamental_map(km, l1, l2);
      const auto lkh = induced_fundamental_map(compose_morphisms(km, hm), l0, l2);
      bool ok = id == FinMap::identity(l0.x) && lkh == compose(lk, lh);
      if (is_cis_isomorphism(hm)) ok = ok && lh.is_homeomorphism();
      h.record("functor-laws", ok, where);
    });

    h.guard("direct-limit", where, [&] {
      const auto d = random_diagram(rng, c);
      const auto dl = cis_direct_limit(d);
      const auto r = check_limit_compatibility(d);
      h.record("direct-limit", cocone_commutes(d, dl) && r.passed(), where);
    });

    h.guard("round-trip", where, [&] {
      const auto cj = cis_to_json(*c);
      const auto c2 = cis_from_json(parse_json(cj.dump()));
      const auto lj = limit_to_json(fund);
      const auto l2 = limit_from_json(parse_json(lj.dump()), c2);
      bool ok = c2 == *c && validate_cis(c2).ok() && cis_to_json(c2) == cj &&
                limit_to_json(l2) == lj && verify_limit_axioms(c2, l2).passed();
      h.record("round-trip", ok, where);
    });

    // Homology checks on a small inductive system.
    CisShape ind;
    ind.inductive = true;
    ind.max_points = 8;
    ind.discrete = false;
    auto ic = random_cis(rng, ind);
    const std::size_t p = k % 4;
    h.guard("invariance", where, [&] {
      const auto r = functorial_invariance_check(ic, p);
      h.record("invariance", r.passed(), where + " p=" + std::to_string(p));
      const auto co = counter_functorial_check(ic, p);
      h.record("counter-invariance", co.passed() && co.limit_dim == r.limit_dim &&
                                         co.module_dim == r.module_dim,
               where + " p=" + std::to_string(p));
      const auto seq = homology_sequence(ic, p);
      const auto col = module_colimit(seq);
      const auto lim = module_limit(dual(seq));
      bool dual_ok = col.dim == lim.dim && col.legs.size() == lim.legs.size();
      for (std::size_t n = 0; dual_ok && n < col.legs.size(); ++n) {
        dual_ok = col.legs[n].transpose() == lim.legs[n];
      }
      h.record("module-duality", dual_ok, where);
      for (std::size_t i = 0; i + 2 < ic.size(); ++i) {
        const auto f = ic.total_map(i);
        const auto g = ic.total_map(i + 1);
        h.record("induced-functoriality",
                 induced_matrix(compose(g, f), p) == induced_matrix(g, p) * induced_matrix(f, p),
                 where);
      }
      const auto kx = order_complex(ic.space(0));
      h.record("boundary-squared-zero",
               (boundary_matrix(kx, p + 1) * boundary_matrix(kx, p + 2)).is_zero(), where);
    });
  }
  return report;
}

}  // namespace cislimit

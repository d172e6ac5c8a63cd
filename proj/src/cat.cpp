#include "cislimit/cat.hpp"

namespace cislimit {

namespace {

bool same_cis(const CisPtr& a, const CisPtr& b) {
  return a == b || (a && b && *a == *b);
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && *a == *b);
}

void check_endpoints(const CisMorphism& m) {
  if (!m.source || !m.target) throw Error("morphism without source or target");
  const auto& s = *m.source;
  const auto& t = *m.target;
  if (s.size() != t.size() || s.tail() != t.tail()) {
    throw Error("morphism between systems with different stage counts or tails");
  }
  if (m.h.size() != s.size()) {
    throw Error("morphism has " + std::to_string(m.h.size()) + " maps for " +
                std::to_string(s.size()) + " stages");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!same_space(m.h[i].source_ptr(), s.space_ptr(i)) ||
        !same_space(m.h[i].target_ptr(), t.space_ptr(i))) {
      throw Error("h_" + std::to_string(i) + " is not a map X_" +
                  std::to_string(i) + " -> Z_" + std::to_string(i));
    }
  }
}

}  // namespace

bool operator==(const CisMorphism& a, const CisMorphism& b) {
  return same_cis(a.source, b.source) && same_cis(a.target, b.target) && a.h == b.h;
}

MorphismReport validate_morphism(const CisMorphism& m) {
  check_endpoints(m);
  const auto& s = *m.source;
  const auto& t = *m.target;
  MorphismReport r;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& h = m.h[i];
    if (!h.profile().continuous) r.issues.push_back({i, "h continuous", ""});
    if (!h.profile().closed) r.issues.push_back({i, "h closed", ""});
    const auto& y = s.y(i);
    for (auto x = y.find_first(); x != PointSet::npos; x = y.find_next(x)) {
      if (!t.y(i).test(h(x))) {
        r.issues.push_back({i, "h(Y) in W",
                            "'" + s.space(i).id(x) + "' maps to '" +
                                t.space(i).id(h(x)) + "' outside W"});
      }
    }
    if (i + 1 >= s.size()) continue;
    const auto& next = m.h[i + 1];
    for (auto x = y.find_first(); x != PointSet::npos; x = y.find_next(x)) {
      const auto lhs = next(s.step(i, x));
      const auto gx = t.step(i, h(x));
      if (gx == no_point || lhs != gx) {
        r.issues.push_back({i, "commutes",
                            "h_{i+1} f_i and g_i h_i differ at '" +
                                s.space(i).id(x) + "'"});
      }
    }
  }
  return r;
}

CisMorphism identity_morphism(const CisPtr& c) {
  CisMorphism m{c, c, {}};
  for (std::size_t i = 0; i < c->size(); ++i) {
    m.h.push_back(FinMap::identity(c->space_ptr(i)));
  }
  return m;
}

CisMorphism compose_morphisms(const CisMorphism& k, const CisMorphism& h) {
  if (!same_cis(h.target, k.source)) {
    throw Error("compose_morphisms: target of h is not the source of k");
  }
  if (k.h.size() != h.h.size()) throw Error("compose_morphisms: stage counts differ");
  CisMorphism out{h.source, k.target, {}};
  for (std::size_t i = 0; i < h.h.size(); ++i) out.h.push_back(compose(k.h[i], h.h[i]));
  return out;
}

bool is_cis_isomorphism(const CisMorphism& m) {
  check_endpoints(m);
  for (std::size_t i = 0; i < m.h.size(); ++i) {
    if (!m.h[i].is_homeomorphism()) return false;
    if (m.h[i].image(m.source->y(i)) != m.target->y(i)) return false;
  }
  return true;
}

FinMap induced_fundamental_map(const CisMorphism& m, const LimitSpace& from,
                               const LimitSpace& to) {
  const auto v = validate_morphism(m);
  if (!v.ok()) {
    const auto& e = v.issues.front();
    throw Error("invalid morphism at stage " + std::to_string(e.stage) + ": " +
                e.clause + (e.detail.empty() ? "" : " (" + e.detail + ")"));
  }
  const auto& s = *m.source;
  if (from.phis.size() != s.size() || to.phis.size() != s.size()) {
    throw Error("induced_fundamental_map: limits do not match the systems");
  }
  std::vector<std::size_t> assign(from.x->size(), no_point);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t x = 0; x < s.space(i).size(); ++x) {
      const auto p = from.phis[i](x);
      const auto q = to.phis[i](m.h[i](x));
      if (assign[p] == no_point) {
        assign[p] = q;
      } else if (assign[p] != q) {
        throw Error("induced map is not well defined at '" + from.x->id(p) + "'");
      }
    }
  }
  for (std::size_t p = 0; p < assign.size(); ++p) {
    if (assign[p] == no_point) {
      throw Error("induced map undefined at '" + from.x->id(p) + "'");
    }
  }
  FinMap out(from.x, to.x, std::move(assign));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (compose(out, from.phis[i]) != compose(to.phis[i], m.h[i])) {
      throw Error("induced map does not commute at stage " + std::to_string(i));
    }
  }
  if (!out.profile().continuous) throw Error("induced map is not continuous");
  if (!out.profile().closed) throw Error("induced map is not closed");
  return out;
}

FinMap induced_fundamental_map(const CisMorphism& m) {
  check_endpoints(m);
  return induced_fundamental_map(m, build_fundamental(*m.source),
                                 build_fundamental(*m.target));
}

CisMorphism CisDiagram::arrow(std::size_t m, std::size_t n) const {
  if (m > n || n >= objects.size()) throw Error("diagram arrow index out of range");
  auto out = identity_morphism(objects[m]);
  for (std::size_t k = m; k < n; ++k) out = compose_morphisms(arrows[k], out);
  return out;
}

void validate_diagram(const CisDiagram& d) {
  if (d.objects.empty()) throw Error("diagram has no objects");
  if (d.arrows.size() + 1 != d.objects.size()) {
    throw Error("diagram needs one arrow between each consecutive pair of objects");
  }
  for (std::size_t n = 0; n < d.objects.size(); ++n) {
    if (!d.objects[n]) throw Error("diagram object " + std::to_string(n) + " is missing");
    const auto v = validate_cis(*d.objects[n]);
    if (!v.ok()) {
      throw Error("diagram object " + std::to_string(n) + " is invalid at stage " +
                  std::to_string(v.issues.front().stage) + ": " +
                  v.issues.front().clause);
    }
  }
  for (std::size_t n = 0; n < d.arrows.size(); ++n) {
    const auto& a = d.arrows[n];
    if (!same_cis(a.source, d.objects[n]) || !same_cis(a.target, d.objects[n + 1])) {
      throw Error("diagram arrow " + std::to_string(n) + " does not connect objects " +
                  std::to_string(n) + " and " + std::to_string(n + 1));
    }
    const auto v = validate_morphism(a);
    if (!v.ok()) {
      throw Error("diagram arrow " + std::to_string(n) + " is invalid at stage " +
                  std::to_string(v.issues.front().stage) + ": " +
                  v.issues.front().clause);
    }
  }
}

DirectLimit cis_direct_limit(const CisDiagram& d) {
  validate_diagram(d);
  const std::size_t objects = d.objects.size();
  const auto& first = *d.objects.front();
  const std::size_t stages = first.size();

  std::vector<LimitSpace> columns;
  for (std::size_t i = 0; i < stages; ++i) {
    std::vector<SpacePtr> spaces;
    std::vector<std::vector<std::size_t>> steps;
    for (std::size_t n = 0; n < objects; ++n) {
      spaces.push_back(d.objects[n]->space_ptr(i));
      if (n + 1 < objects) steps.push_back(d.arrows[n].h[i].assignment());
    }
    columns.push_back(glue_chain(spaces, steps).limit);
  }

  std::vector<Stage> result(stages);
  for (std::size_t i = 0; i < stages; ++i) {
    const auto& col = columns[i];
    PointSet y = col.x->none();
    for (std::size_t n = 0; n < objects; ++n) {
      y |= col.phis[n].image(d.objects[n]->y(i));
    }
    result[i].space = col.x;
    result[i].y = y;
    if (i + 1 >= stages) continue;
    const auto& next = columns[i + 1];
    auto sub = subspace(col.x, y);
    std::vector<std::size_t> f(sub.space->size(), no_point);
    // Position of each glued point inside the subspace.
    std::vector<std::size_t> pos(col.x->size(), no_point);
    for (std::size_t k = 0; k < sub.space->size(); ++k) pos[sub.inclusion(k)] = k;
    for (std::size_t n = 0; n < objects; ++n) {
      const auto& obj = *d.objects[n];
      const auto& yn = obj.y(i);
      for (auto x = yn.find_first(); x != PointSet::npos; x = yn.find_next(x)) {
        const auto at = pos[col.phis[n](x)];
        const auto value = next.phis[n](obj.step(i, x));
        if (f[at] == no_point) {
          f[at] = value;
        } else if (f[at] != value) {
          throw Error("direct limit: glued f_" + std::to_string(i) +
                      " is not well defined at '" + sub.space->id(at) + "'");
        }
      }
    }
    result[i].f = FinMap(sub.space, next.x, std::move(f));
  }

  auto limit = std::make_shared<const Cis>(std::move(result), first.tail());
  const auto v = validate_cis(*limit);
  if (!v.ok()) {
    throw Error("direct limit is not a valid system: stage " +
                std::to_string(v.issues.front().stage) + ": " +
                v.issues.front().clause);
  }
  DirectLimit out{limit, {}};
  for (std::size_t n = 0; n < objects; ++n) {
    CisMorphism e{d.objects[n], limit, {}};
    for (std::size_t i = 0; i < stages; ++i) e.h.push_back(columns[i].phis[n]);
    out.cocone.push_back(std::move(e));
  }
  return out;
}

bool cocone_commutes(const CisDiagram& d, const DirectLimit& dl) {
  for (std::size_t n = 0; n < d.objects.size(); ++n) {
    for (std::size_t m = 0; m <= n; ++m) {
      if (compose_morphisms(dl.cocone[n], d.arrow(m, n)).h != dl.cocone[m].h) return false;
    }
  }
  return true;
}

CompatibilityReport check_limit_compatibility(const CisDiagram& d) {
  const auto dl = cis_direct_limit(d);
  const auto top = build_fundamental(*dl.limit);
  std::vector<LimitSpace> lims;
  for (const auto& obj : d.objects) lims.push_back(build_fundamental(*obj));

  CompatibilityReport r;
  r.continuous = true;
  r.cocone = true;
  for (std::size_t n = 0; n < d.objects.size(); ++n) {
    r.theta.push_back(induced_fundamental_map(dl.cocone[n], lims[n], top));
    if (!r.theta.back().profile().continuous) {
      r.continuous = false;
      r.witnesses.push_back("theta^(" + std::to_string(n) + ") is not continuous");
    }
  }
  for (std::size_t n = 0; n < d.objects.size(); ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      const auto lh = induced_fundamental_map(d.arrow(m, n), lims[m], lims[n]);
      if (compose(r.theta[n], lh) != r.theta[m]) {
        r.cocone = false;
        r.witnesses.push_back("theta^(" + std::to_string(n) + ") . Lh^(" +
                              std::to_string(m) + std::to_string(n) + ") != theta^(" +
                              std::to_string(m) + ")");
      }
    }
  }
  r.final_topology = final_space(*top.x, r.theta) == *top.x;
  if (!r.final_topology) r.witnesses.push_back("limit does not carry the final topology");
  return r;
}

}  // namespace cislimit

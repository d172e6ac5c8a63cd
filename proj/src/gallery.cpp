#include "cislimit/gallery.hpp"

#include <algorithm>
#include <charconv>

namespace cislimit {

namespace {

void check_cap(const char* what, std::size_t n, std::size_t cap) {
  if (n > cap) {
    throw Error(std::string(what) + ": parameter " + std::to_string(n) +
                " exceeds the cap " + std::to_string(cap));
  }
}

std::size_t parse_count(const std::string& s, const char* what) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty()) {
    throw Error(std::string(what) + ": expected a number, got '" + s + "'");
  }
  return v;
}

// Point table of an inclusion that keeps ids.
std::vector<std::size_t> id_table(const FinSpace& from, const FinSpace& to) {
  std::vector<std::size_t> t(from.size());
  for (std::size_t x = 0; x < from.size(); ++x) t[x] = to.index_of(from.id(x));
  return t;
}

// Chain of spaces, each included in the next by id, with Y = X.
Cis inclusion_chain(const std::vector<SpacePtr>& spaces, Tail tail) {
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto& x = spaces[i];
    if (i + 1 < spaces.size()) {
      stages.push_back(make_stage(x, x->all(), spaces[i + 1], id_table(*x, *spaces[i + 1])));
    } else {
      stages.push_back(make_stage(x, x->all(), nullptr));
    }
  }
  return Cis(std::move(stages), tail);
}

struct Relabeled {
  SpacePtr space;
  std::vector<std::size_t> index;  // old position -> new position
};

Relabeled relabel_space(const FinSpace& x, const std::string& suffix) {
  std::vector<std::string> ids;
  for (const auto& id : x.ids()) ids.push_back(id + suffix);
  std::vector<PointSet> up;
  for (std::size_t k = 0; k < x.size(); ++k) up.push_back(x.min_open(k));
  auto space = make_space(FinSpace::from_min_open(ids, up));
  std::vector<std::size_t> index(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) index[k] = space->index_of(ids[k]);
  return {space, std::move(index)};
}

}  // namespace

SpacePtr point_space() {
  static const SpacePtr p = make_space(FinSpace::discrete({"*"}));
  return p;
}

SpacePtr sierpinski() {
  static const SpacePtr s =
      make_space(FinSpace::from_ids({"a", "b"}, {{"a", {"a"}}, {"b", {"a", "b"}}}));
  return s;
}

SpacePtr circle_model() {
  static const SpacePtr c = make_space(FinSpace::from_ids(
      {"a", "b", "p", "q"},
      {{"a", {"a", "p", "q"}}, {"b", {"b", "p", "q"}}, {"p", {"p"}}, {"q", {"q"}}}));
  return c;
}

SpacePtr sphere_model(std::size_t n) {
  std::vector<std::vector<std::string>> levels{{"a", "b"}};
  for (std::size_t k = 1; k <= n; ++k) {
    levels.push_back({"p" + std::to_string(k), "q" + std::to_string(k)});
  }
  std::vector<std::string> ids;
  std::map<std::string, std::vector<std::string>> up;
  for (std::size_t k = 0; k <= n; ++k) {
    for (const auto& x : levels[k]) {
      ids.push_back(x);
      auto& u = up[x];
      u.push_back(x);
      for (std::size_t l = k + 1; l <= n; ++l) {
        u.insert(u.end(), levels[l].begin(), levels[l].end());
      }
    }
  }
  return make_space(FinSpace::from_ids(ids, up));
}

SpacePtr torus_model(std::size_t n) {
  if (n == 0) return point_space();
  auto t = circle_model();
  for (std::size_t k = 1; k < n; ++k) t = make_space(product(*t, *circle_model()));
  return t;
}

SpacePtr interval_model() {
  static const SpacePtr i = make_space(FinSpace::from_ids(
      {"l", "m", "r"}, {{"l", {"l", "m"}}, {"m", {"m"}}, {"r", {"r", "m"}}}));
  return i;
}

SpacePtr named_space(const std::string& name) {
  if (name == "point") return point_space();
  if (name == "sierpinski") return sierpinski();
  if (name == "discrete2") return make_space(FinSpace::discrete({"a", "b"}));
  if (name == "circle") return circle_model();
  if (name.starts_with("sphere")) {
    const auto k = parse_count(name.substr(6), "sphere");
    check_cap("sphere", k, gallery_cap);
    return sphere_model(k);
  }
  if (name.starts_with("torus")) {
    const auto k = parse_count(name.substr(5), "torus");
    check_cap("torus", k, torus_cap);
    return torus_model(k);
  }
  throw Error("unknown space '" + name +
              "' (point, sierpinski, discrete2, circle, sphereK, torusK)");
}

Cis identity_system(const SpacePtr& x, std::size_t n, bool stationary) {
  if (n == 0) throw Error("identity system needs at least one stage");
  std::vector<SpacePtr> spaces(n, x);
  return inclusion_chain(spaces, stationary ? Tail::stationary(n - 1) : Tail::cutoff());
}

Cis sphere_chain(std::size_t n) {
  check_cap("sphere_chain", n, gallery_cap);
  std::vector<SpacePtr> spaces;
  for (std::size_t k = 0; k <= n; ++k) spaces.push_back(sphere_model(k));
  return inclusion_chain(spaces, Tail::cutoff());
}

Cis stationary_sphere(std::size_t n) {
  check_cap("stationary_sphere", n, gallery_cap);
  std::vector<SpacePtr> spaces;
  for (std::size_t k = 0; k <= n; ++k) spaces.push_back(sphere_model(k));
  return inclusion_chain(spaces, Tail::stationary(n));
}

Cis torus_chain(std::size_t n) {
  check_cap("torus_chain", n, torus_cap);
  if (n == 0) throw Error("torus_chain needs N >= 1");
  std::vector<SpacePtr> spaces;
  for (std::size_t k = 1; k <= n; ++k) spaces.push_back(torus_model(k));
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto& x = spaces[i];
    if (i + 1 == spaces.size()) {
      stages.push_back(make_stage(x, x->all(), nullptr));
      continue;
    }
    std::vector<std::size_t> t(x->size());
    for (std::size_t p = 0; p < x->size(); ++p) {
      t[p] = spaces[i + 1]->index_of(pair_label(x->id(p), "a"));
    }
    stages.push_back(make_stage(x, x->all(), spaces[i + 1], t));
  }
  return Cis(std::move(stages), Tail::cutoff());
}

Cis interval_chain(std::size_t n) {
  check_cap("interval_chain", n, gallery_cap);
  if (n == 0) throw Error("interval_chain needs N >= 1");
  const auto x = interval_model();
  const auto r = x->index_of("r");
  const auto l = x->index_of("l");
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < n; ++i) {
    if (i + 1 == n) {
      stages.push_back(make_stage(x, x->singleton(r), nullptr));
      continue;
    }
    std::vector<std::size_t> t(x->size(), no_point);
    t[r] = l;
    stages.push_back(make_stage(x, x->singleton(r), x, t));
  }
  return Cis(std::move(stages), Tail::cutoff());
}

Cis non_semicomponible() {
  const auto x0 = sierpinski();
  const auto x1 = make_space(FinSpace::discrete({"c", "d"}));
  const auto x2 = make_space(FinSpace::discrete({"e"}));
  std::vector<std::size_t> t0(2, no_point);
  t0[x0->index_of("b")] = x1->index_of("d");
  std::vector<std::size_t> t1(2, no_point);
  t1[x1->index_of("c")] = 0;
  std::vector<Stage> stages{
      make_stage(x0, x0->singleton(x0->index_of("b")), x1, t0),
      make_stage(x1, x1->singleton(x1->index_of("c")), x2, t1),
      make_stage(x2, x2->all(), nullptr)};
  return Cis(std::move(stages), Tail::cutoff());
}

Cis sphere_truncation(std::size_t n, std::size_t k) {
  check_cap("sphere_truncation", n, gallery_cap);
  if (k > n) throw Error("sphere_truncation: k must not exceed N");
  std::vector<SpacePtr> models;
  for (std::size_t j = 0; j <= k; ++j) models.push_back(sphere_model(j));
  std::vector<SpacePtr> spaces;
  for (std::size_t i = 0; i <= n; ++i) spaces.push_back(models[std::min(i, k)]);
  return inclusion_chain(spaces, Tail::cutoff());
}

std::vector<std::string> gallery_names() {
  return {"identity",      "sphere_chain",       "stationary_sphere", "torus_chain",
          "interval_chain", "non_semicomponible", "sphere_truncation"};
}

Cis build_example(const GalleryId& id) {
  const auto& p = id.params;
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi) {
      throw Error("gallery '" + id.name + "' takes " + std::to_string(lo) +
                  (lo == hi ? "" : " to " + std::to_string(hi)) + " parameter(s)");
    }
  };
  if (id.name == "identity") {
    need(2, 3);
    const auto n = parse_count(p[1], "identity");
    check_cap("identity", n, gallery_cap);
    bool stationary = false;
    if (p.size() == 3) {
      if (p[2] != "stationary" && p[2] != "cutoff") {
        throw Error("identity: tail must be 'stationary' or 'cutoff'");
      }
      stationary = p[2] == "stationary";
    }
    return identity_system(named_space(p[0]), n, stationary);
  }
  if (id.name == "sphere_chain") {
    need(1, 1);
    return sphere_chain(parse_count(p[0], "sphere_chain"));
  }
  if (id.name == "stationary_sphere") {
    need(1, 1);
    return stationary_sphere(parse_count(p[0], "stationary_sphere"));
  }
  if (id.name == "torus_chain") {
    need(1, 1);
    return torus_chain(parse_count(p[0], "torus_chain"));
  }
  if (id.name == "interval_chain") {
    need(1, 1);
    return interval_chain(parse_count(p[0], "interval_chain"));
  }
  if (id.name == "non_semicomponible") {
    need(0, 0);
    return non_semicomponible();
  }
  if (id.name == "sphere_truncation") {
    need(2, 2);
    return sphere_truncation(parse_count(p[0], "sphere_truncation"),
                             parse_count(p[1], "sphere_truncation"));
  }
  throw Error("unknown gallery example '" + id.name + "'");
}

Cis relabel(const Cis& c, const std::string& suffix) {
  std::vector<Relabeled> spaces;
  for (std::size_t i = 0; i < c.size(); ++i) spaces.push_back(relabel_space(c.space(i), suffix));
  std::vector<Stage> stages;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& r = spaces[i];
    PointSet y = r.space->none();
    const auto& oy = c.y(i);
    for (auto x = oy.find_first(); x != PointSet::npos; x = oy.find_next(x)) y.set(r.index[x]);
    if (i == c.last()) {
      stages.push_back(make_stage(r.space, y, nullptr));
      continue;
    }
    std::vector<std::size_t> t(r.space->size(), no_point);
    for (std::size_t x = 0; x < c.space(i).size(); ++x) {
      const auto s = c.step(i, x);
      if (s != no_point) t[r.index[x]] = spaces[i + 1].index[s];
    }
    stages.push_back(make_stage(r.space, y, spaces[i + 1].space, t));
  }
  return Cis(std::move(stages), c.tail());
}

CisMorphism relabel_morphism(const CisPtr& c, const std::string& suffix) {
  auto target = std::make_shared<const Cis>(relabel(*c, suffix));
  CisMorphism m{c, target, {}};
  for (std::size_t i = 0; i < c->size(); ++i) {
    std::vector<std::size_t> t(c->space(i).size());
    for (std::size_t x = 0; x < t.size(); ++x) {
      t[x] = target->space(i).index_of(c->space(i).id(x) + suffix);
    }
    m.h.push_back(FinMap(c->space_ptr(i), target->space_ptr(i), std::move(t)));
  }
  return m;
}

CisMorphism collapse_morphism(const CisPtr& c) {
  auto target = std::make_shared<const Cis>(
      identity_system(point_space(), c->size(), c->stationary()));
  CisMorphism m{c, target, {}};
  for (std::size_t i = 0; i < c->size(); ++i) {
    m.h.push_back(FinMap::constant(c->space_ptr(i), target->space_ptr(i), 0));
  }
  return m;
}

CisMorphism limit_cocone_morphism(const CisPtr& c) {
  const auto ls = build_fundamental(*c);
  auto target = std::make_shared<const Cis>(identity_system(ls.x, c->size(), c->stationary()));
  CisMorphism m{c, target, {}};
  for (std::size_t i = 0; i < c->size(); ++i) {
    m.h.push_back(FinMap(c->space_ptr(i), target->space_ptr(i), ls.phis[i].assignment()));
  }
  return m;
}

CisDiagram sphere_truncation_diagram(std::size_t n) {
  check_cap("sphere_truncation_diagram", n, gallery_cap);
  CisDiagram d;
  for (std::size_t k = 0; k <= n; ++k) {
    d.objects.push_back(std::make_shared<const Cis>(sphere_truncation(n, k)));
  }
  for (std::size_t k = 0; k < n; ++k) {
    const auto& a = *d.objects[k];
    const auto& b = *d.objects[k + 1];
    CisMorphism m{d.objects[k], d.objects[k + 1], {}};
    for (std::size_t i = 0; i < a.size(); ++i) {
      m.h.push_back(FinMap(a.space_ptr(i), b.space_ptr(i), id_table(a.space(i), b.space(i))));
    }
    d.arrows.push_back(std::move(m));
  }
  return d;
}

CisDiagram collapse_diagram(const CisPtr& c) {
  auto m = collapse_morphism(c);
  CisDiagram d;
  d.objects = {c, m.target};
  d.arrows.push_back(std::move(m));
  return d;
}

CisDiagram constant_diagram(const CisPtr& c, std::size_t count) {
  if (count == 0) throw Error("constant diagram needs at least one object");
  CisDiagram d;
  d.objects.assign(count, c);
  for (std::size_t k = 0; k + 1 < count; ++k) d.arrows.push_back(identity_morphism(c));
  return d;
}

NonFundamentalSearch search_non_fundamental(const Cis& c, std::size_t cap) {
  const auto fund = build_fundamental(c);
  NonFundamentalSearch out;
  const auto& x = *fund.x;
  const std::size_t n = x.size();
  if (n > cap) {
    out.status = SearchStatus::undecided;
    return out;
  }
  // rel[a] = U_a as a bitset; relation "b in U_a".
  std::vector<PointSet> base(n);
  for (std::size_t a = 0; a < n; ++a) base[a] = x.min_open(a);
  // A pair is fixed when both points lie in a common image: its status is
  // dictated by the embedding requirement.
  std::vector<PointSet> fixed(n, PointSet(n));
  for (const auto& phi : fund.phis) {
    const auto img = phi.image();
    for (auto a = img.find_first(); a != PointSet::npos; a = img.find_next(a)) fixed[a] |= img;
  }
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!fixed[a].test(b) && !base[a].test(b)) free.emplace_back(a, b);
    }
  }
  // forbidden[a].test(b): b must stay outside U_a.
  std::vector<PointSet> forbidden(n, PointSet(n));
  for (std::size_t a = 0; a < n; ++a) forbidden[a] = fixed[a] - base[a];

  auto close = [&](std::vector<PointSet> rel) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < n; ++a) {
        PointSet grown = rel[a];
        for (auto b = rel[a].find_first(); b != PointSet::npos; b = rel[a].find_next(b)) {
          grown |= rel[b];
        }
        if (grown != rel[a]) {
          rel[a] = std::move(grown);
          changed = true;
        }
      }
    }
    return rel;
  };
  auto consistent = [&](const std::vector<PointSet>& rel) {
    for (std::size_t a = 0; a < n; ++a) {
      if (rel[a].intersects(forbidden[a])) return false;
    }
    return true;
  };

  auto visit = [&](const std::vector<PointSet>& rel) {
    ++out.examined;
    if (rel == base) return;
    auto space = make_space(FinSpace::from_min_open(x.ids(), rel));
    LimitSpace cand{space, {}};
    for (const auto& phi : fund.phis) {
      cand.phis.push_back(FinMap(phi.source_ptr(), space, phi.assignment()));
    }
    if (verify_limit_axioms(c, cand).passed() && !has_weak_topology(c, cand)) {
      out.found.push_back(std::move(cand));
    }
  };

  auto dfs = [&](auto&& self, std::size_t k, std::vector<PointSet> rel) -> void {
    while (k < free.size() && (rel[free[k].first].test(free[k].second) ||
                               forbidden[free[k].first].test(free[k].second))) {
      ++k;
    }
    if (k == free.size()) {
      visit(rel);
      return;
    }
    const auto [a, b] = free[k];
    auto with = rel;
    with[a].set(b);
    with = close(std::move(with));
    if (consistent(with)) self(self, k + 1, std::move(with));
    forbidden[a].set(b);
    self(self, k + 1, std::move(rel));
    forbidden[a].reset(b);
  };
  dfs(dfs, 0, base);
  out.status = out.found.empty() ? SearchStatus::none : SearchStatus::found;
  return out;
}

}  // namespace cislimit

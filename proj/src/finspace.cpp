#include "cislimit/finspace.hpp"

#include <algorithm>
#include <numeric>

namespace cislimit {

namespace {

std::vector<std::size_t> sorted_order(const std::vector<std::string>& ids) {
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  return order;
}

}  // namespace

FinSpace FinSpace::from_min_open(std::vector<std::string> ids,
                                 std::vector<PointSet> min_open) {
  const std::size_t n = ids.size();
  if (min_open.size() != n) {
    throw Error("min_open has " + std::to_string(min_open.size()) +
                " entries for " + std::to_string(n) + " points");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (min_open[x].size() != n) {
      throw Error("min_open of point '" + ids[x] + "' has wrong width");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (!min_open[x].test(x)) {
      throw Error("point '" + ids[x] + "' is not in its own minimal open set");
    }
    for (auto y = min_open[x].find_first(); y != PointSet::npos;
         y = min_open[x].find_next(y)) {
      if (!min_open[y].is_subset_of(min_open[x])) {
        throw Error("minimal open set of point '" + ids[x] + "' contains '" +
                    ids[y] + "' but not all of U_" + ids[y]);
      }
    }
  }

  const auto order = sorted_order(ids);
  std::vector<std::size_t> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[order[k]] = k;

  FinSpace s;
  s.ids_.reserve(n);
  s.up_.assign(n, PointSet(n));
  s.down_.assign(n, PointSet(n));
  for (std::size_t k = 0; k < n; ++k) {
    s.ids_.push_back(std::move(ids[order[k]]));
    if (k > 0 && s.ids_[k] == s.ids_[k - 1]) {
      throw Error("duplicate point identifier '" + s.ids_[k] + "'");
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    const auto& u = min_open[x];
    for (auto y = u.find_first(); y != PointSet::npos; y = u.find_next(y)) {
      s.up_[rank[x]].set(rank[y]);
      s.down_[rank[y]].set(rank[x]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) s.index_.emplace(s.ids_[k], k);
  return s;
}

FinSpace FinSpace::from_ids(
    const std::vector<std::string>& ids,
    const std::map<std::string, std::vector<std::string>>& min_open) {
  std::map<std::string, std::size_t, std::less<>> pos;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!pos.emplace(ids[k], k).second) {
      throw Error("duplicate point identifier '" + ids[k] + "'");
    }
  }
  std::vector<PointSet> up(ids.size(), PointSet(ids.size()));
  for (const auto& [x, members] : min_open) {
    auto it = pos.find(x);
    if (it == pos.end()) {
      throw Error("min_open names unknown point '" + x + "'");
    }
    for (const auto& y : members) {
      auto jt = pos.find(y);
      if (jt == pos.end()) {
        throw Error("min_open of point '" + x + "' names unknown point '" + y +
                    "'");
      }
      up[it->second].set(jt->second);
    }
  }
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (!min_open.contains(ids[k])) {
      throw Error("point '" + ids[k] + "' has no min_open entry");
    }
  }
  return from_min_open(ids, std::move(up));
}

FinSpace FinSpace::discrete(std::vector<std::string> ids) {
  std::vector<PointSet> up(ids.size(), PointSet(ids.size()));
  for (std::size_t k = 0; k < ids.size(); ++k) up[k].set(k);
  return from_min_open(std::move(ids), std::move(up));
}

FinSpace FinSpace::indiscrete(std::vector<std::string> ids) {
  std::vector<PointSet> up(ids.size(), ~PointSet(ids.size()));
  return from_min_open(std::move(ids), std::move(up));
}

std::optional<std::size_t> FinSpace::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FinSpace::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error("unknown point identifier '" + std::string(id) + "'");
  }
  return it->second;
}

PointSet FinSpace::singleton(std::size_t x) const {
  PointSet s(size());
  s.set(x);
  return s;
}

PointSet FinSpace::closure(const PointSet& a) const {
  PointSet out(size());
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    out |= down_[x];
  }
  return out;
}

PointSet FinSpace::open_hull(const PointSet& a) const {
  PointSet out(size());
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    out |= up_[x];
  }
  return out;
}

bool FinSpace::is_open(const PointSet& a) const { return open_hull(a) == a; }
bool FinSpace::is_closed(const PointSet& a) const { return closure(a) == a; }

PointSet FinSpace::to_set(std::span<const std::string> ids) const {
  PointSet out(size());
  for (const auto& id : ids) out.set(index_of(id));
  return out;
}

std::vector<std::string> FinSpace::to_ids(const PointSet& a) const {
  std::vector<std::string> out;
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    out.push_back(ids_[x]);
  }
  return out;
}

// ---------------------------------------------------------------------------

FinMap::FinMap(SpacePtr source, SpacePtr target,
               std::vector<std::size_t> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      to_(std::move(assignment)) {
  if (!source_ || !target_) throw Error("map with null space");
  if (to_.size() != source_->size()) {
    throw Error("map assignment is not total on its source");
  }
  for (std::size_t x = 0; x < to_.size(); ++x) {
    if (to_[x] >= target_->size()) {
      throw Error("map sends '" + source_->id(x) + "' outside its target");
    }
  }
  profile_ = classify_map(*this);
}

FinMap FinMap::from_ids(SpacePtr source, SpacePtr target,
                        const std::map<std::string, std::string>& assignment) {
  std::vector<std::size_t> to(source->size(), 0);
  PointSet seen = source->none();
  for (const auto& [x, y] : assignment) {
    const auto xi = source->index_of(x);
    to[xi] = target->index_of(y);
    seen.set(xi);
  }
  if (!seen.all()) {
    auto missing = (~seen).find_first();
    throw Error("map is not defined at point '" + source->id(missing) + "'");
  }
  return FinMap(std::move(source), std::move(target), std::move(to));
}

FinMap FinMap::identity(SpacePtr space) {
  std::vector<std::size_t> to(space->size());
  std::iota(to.begin(), to.end(), 0);
  return FinMap(space, space, std::move(to));
}

FinMap FinMap::constant(SpacePtr source, SpacePtr target, std::size_t value) {
  std::vector<std::size_t> to(source->size(), value);
  return FinMap(std::move(source), std::move(target), std::move(to));
}

std::map<std::string, std::string> FinMap::to_id_map() const {
  std::map<std::string, std::string> out;
  for (std::size_t x = 0; x < to_.size(); ++x) {
    out.emplace(source_->id(x), target_->id(to_[x]));
  }
  return out;
}

PointSet FinMap::image(const PointSet& a) const {
  PointSet out = target_->none();
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    out.set(to_[x]);
  }
  return out;
}

PointSet FinMap::preimage(const PointSet& b) const {
  PointSet out = source_->none();
  for (std::size_t x = 0; x < to_.size(); ++x) {
    if (b.test(to_[x])) out.set(x);
  }
  return out;
}

bool FinMap::is_homeomorphism() const {
  if (!profile_.embedding || !profile_.surjective) return false;
  auto inv = inverse();
  return inv && inv->profile().embedding;
}

std::optional<FinMap> FinMap::inverse() const {
  if (!profile_.injective || !profile_.surjective) return std::nullopt;
  std::vector<std::size_t> back(to_.size());
  for (std::size_t x = 0; x < to_.size(); ++x) back[to_[x]] = x;
  return FinMap(target_, source_, std::move(back));
}

bool operator==(const FinMap& a, const FinMap& b) {
  if (a.to_ != b.to_) return false;
  const bool same_source = a.source_ == b.source_ || *a.source_ == *b.source_;
  const bool same_target = a.target_ == b.target_ || *a.target_ == *b.target_;
  return same_source && same_target;
}

FinMap compose(const FinMap& g, const FinMap& f) {
  if (f.target_ptr() != g.source_ptr() && f.target() != g.source()) {
    throw Error("compose: target of the first map is not the source of the second");
  }
  std::vector<std::size_t> to(f.source().size());
  for (std::size_t x = 0; x < to.size(); ++x) to[x] = g(f(x));
  return FinMap(f.source_ptr(), g.target_ptr(), std::move(to));
}

MapProfile classify_map(const FinMap& m) {
  const auto& src = m.source();
  const auto& dst = m.target();
  MapProfile p;

  p.continuous = true;
  for (std::size_t x = 0; x < src.size() && p.continuous; ++x) {
    p.continuous = m.image(src.min_open(x)).is_subset_of(dst.min_open(m(x)));
  }

  // Every closed set is a finite union of point closures.
  p.closed = true;
  for (std::size_t x = 0; x < src.size() && p.closed; ++x) {
    p.closed = dst.is_closed(m.image(src.point_closure(x)));
  }

  PointSet hit = dst.none();
  p.injective = true;
  for (std::size_t x = 0; x < src.size(); ++x) {
    if (hit.test(m(x))) p.injective = false;
    hit.set(m(x));
  }
  p.surjective = hit.all();

  p.embedding = p.injective && p.continuous;
  for (std::size_t y = 0; y < src.size() && p.embedding; ++y) {
    for (std::size_t x = 0; x < src.size(); ++x) {
      if (dst.min_open(m(y)).test(m(x)) && !src.min_open(y).test(x)) {
        p.embedding = false;
        break;
      }
    }
  }
  return p;
}

PointSet set_closure(const FinSpace& space, const PointSet& a) {
  if (a.size() != space.size()) throw Error("point set has wrong width");
  return space.closure(a);
}

PointSet set_closure(const FinSpace& space, std::span<const std::string> ids) {
  return space.closure(space.to_set(ids));
}

Subspace subspace(const SpacePtr& space, const PointSet& a) {
  if (a.size() != space->size()) throw Error("point set has wrong width");
  std::vector<std::size_t> members;
  for (auto x = a.find_first(); x != PointSet::npos; x = a.find_next(x)) {
    members.push_back(x);
  }
  const std::size_t k = members.size();
  std::vector<std::string> ids;
  std::vector<PointSet> up(k, PointSet(k));
  for (std::size_t i = 0; i < k; ++i) {
    ids.push_back(space->id(members[i]));
    for (std::size_t j = 0; j < k; ++j) {
      if (space->min_open(members[i]).test(members[j])) up[i].set(j);
    }
  }
  // Members are already in identifier order, so positions are preserved.
  auto sub = make_space(FinSpace::from_min_open(std::move(ids), std::move(up)));
  return {sub, FinMap(sub, space, members)};
}

std::string coproduct_label(std::size_t summand, std::string_view id) {
  return std::to_string(summand) + ":" + std::string(id);
}

Coproduct coproduct(std::span<const SpacePtr> spaces) {
  std::vector<std::string> ids;
  std::vector<std::size_t> offset;
  std::size_t total = 0;
  for (const auto& s : spaces) {
    offset.push_back(total);
    total += s->size();
  }
  std::vector<PointSet> up(total, PointSet(total));
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    const auto& s = *spaces[k];
    for (std::size_t x = 0; x < s.size(); ++x) {
      ids.push_back(coproduct_label(k, s.id(x)));
      const auto& u = s.min_open(x);
      for (auto y = u.find_first(); y != PointSet::npos; y = u.find_next(y)) {
        up[offset[k] + x].set(offset[k] + y);
      }
    }
  }
  auto sum = make_space(FinSpace::from_min_open(ids, std::move(up)));
  Coproduct out{sum, {}};
  for (std::size_t k = 0; k < spaces.size(); ++k) {
    std::vector<std::size_t> to(spaces[k]->size());
    for (std::size_t x = 0; x < to.size(); ++x) {
      to[x] = sum->index_of(ids[offset[k] + x]);
    }
    out.injections.emplace_back(spaces[k], sum, std::move(to));
  }
  return out;
}

Quotient quotient_by_labels(const SpacePtr& space,
                            std::span<const std::size_t> labels) {
  if (labels.size() != space->size()) {
    throw Error("quotient: one class label per point required");
  }
  std::map<std::size_t, std::size_t> class_of_label;
  std::vector<std::string> names;
  std::vector<std::size_t> to(space->size());
  for (std::size_t x = 0; x < space->size(); ++x) {
    auto [it, fresh] = class_of_label.emplace(labels[x], names.size());
    if (fresh) names.push_back(space->id(x));
    to[x] = it->second;
  }
  const Leg leg{space, to};
  auto q = make_space(final_space(names, std::span<const Leg>(&leg, 1)));
  // Class names were first members in identifier order, so they are sorted.
  return {q, FinMap(space, q, std::move(to))};
}

Quotient quotient(const SpacePtr& space, std::span<const PointSet> partition) {
  std::vector<std::size_t> labels(space->size());
  PointSet covered = space->none();
  for (std::size_t c = 0; c < partition.size(); ++c) {
    const auto& cls = partition[c];
    if (cls.size() != space->size()) throw Error("quotient: class has wrong width");
    if (cls.none()) throw Error("quotient: empty class");
    if (cls.intersects(covered)) {
      throw Error("quotient: classes overlap at '" +
                  space->id((cls & covered).find_first()) + "'");
    }
    covered |= cls;
    for (auto x = cls.find_first(); x != PointSet::npos; x = cls.find_next(x)) {
      labels[x] = c;
    }
  }
  if (!covered.all()) {
    throw Error("quotient: partition does not cover '" +
                space->id((~covered).find_first()) + "'");
  }
  return quotient_by_labels(space, labels);
}

std::string pair_label(std::string_view a, std::string_view b) {
  return "(" + std::string(a) + "," + std::string(b) + ")";
}

FinSpace product(const FinSpace& a, const FinSpace& b) {
  const std::size_t n = a.size() * b.size();
  std::vector<std::string> ids;
  ids.reserve(n);
  std::vector<PointSet> up(n, PointSet(n));
  for (std::size_t x = 0; x < a.size(); ++x) {
    for (std::size_t y = 0; y < b.size(); ++y) {
      ids.push_back(pair_label(a.id(x), b.id(y)));
      auto& u = up[x * b.size() + y];
      const auto& ux = a.min_open(x);
      const auto& uy = b.min_open(y);
      for (auto p = ux.find_first(); p != PointSet::npos; p = ux.find_next(p)) {
        for (auto q = uy.find_first(); q != PointSet::npos; q = uy.find_next(q)) {
          u.set(p * b.size() + q);
        }
      }
    }
  }
  return FinSpace::from_min_open(std::move(ids), std::move(up));
}

FinSpace final_space(std::vector<std::string> points, std::span<const Leg> legs) {
  const std::size_t n = points.size();
  // For every target point t: the images m(U_p) over legs m and p with m(p)=t.
  std::vector<PointSet> pull(n, PointSet(n));
  for (const auto& leg : legs) {
    if (leg.to.size() != leg.source->size()) {
      throw Error("final_space: leg assignment is not total");
    }
    for (std::size_t p = 0; p < leg.to.size(); ++p) {
      if (leg.to[p] >= n) throw Error("final_space: leg leaves the point set");
      const auto& u = leg.source->min_open(p);
      for (auto q = u.find_first(); q != PointSet::npos; q = u.find_next(q)) {
        pull[leg.to[p]].set(leg.to[q]);
      }
    }
  }
  std::vector<PointSet> up(n, PointSet(n));
  for (std::size_t x = 0; x < n; ++x) {
    PointSet s(n);
    s.set(x);
    PointSet frontier = s;
    while (frontier.any()) {
      PointSet next(n);
      for (auto t = frontier.find_first(); t != PointSet::npos;
           t = frontier.find_next(t)) {
        next |= pull[t];
      }
      frontier = next - s;
      s |= next;
    }
    up[x] = std::move(s);
  }
  return FinSpace::from_min_open(std::move(points), std::move(up));
}

FinSpace final_space(const FinSpace& carrier, std::span<const FinMap> maps) {
  std::vector<Leg> legs;
  for (const auto& m : maps) {
    if (m.target() != carrier) {
      throw Error("final_space: map does not land in the carrier");
    }
    legs.push_back({m.source_ptr(), m.assignment()});
  }
  return final_space(carrier.ids(), legs);
}

namespace {

struct HomeoSearch {
  const FinSpace& a;
  const FinSpace& b;
  std::vector<std::size_t> order;
  std::vector<std::size_t> to;
  std::vector<bool> used;

  static std::pair<std::size_t, std::size_t> signature(const FinSpace& s,
                                                       std::size_t x) {
    return {s.min_open(x).count(), s.point_closure(x).count()};
  }

  bool consistent(std::size_t x, std::size_t y, std::size_t depth) const {
    if (a.min_open(x).test(x) != b.min_open(y).test(y)) return false;
    for (std::size_t k = 0; k < depth; ++k) {
      const auto x2 = order[k];
      const auto y2 = to[x2];
      if (a.min_open(x).test(x2) != b.min_open(y).test(y2)) return false;
      if (a.min_open(x2).test(x) != b.min_open(y2).test(y)) return false;
    }
    return true;
  }

  bool run(std::size_t depth) {
    if (depth == order.size()) return true;
    const auto x = order[depth];
    const auto sig = signature(a, x);
    for (std::size_t y = 0; y < b.size(); ++y) {
      if (used[y] || signature(b, y) != sig || !consistent(x, y, depth)) continue;
      used[y] = true;
      to[x] = y;
      if (run(depth + 1)) return true;
      used[y] = false;
    }
    return false;
  }
};

}  // namespace

HomeomorphismResult find_homeomorphism(const SpacePtr& a, const SpacePtr& b,
                                       std::size_t cap) {
  if (a->size() > cap || b->size() > cap) {
    return {SearchStatus::undecided, std::nullopt};
  }
  if (a->size() != b->size()) return {SearchStatus::none, std::nullopt};

  HomeoSearch search{*a, *b, {}, std::vector<std::size_t>(a->size()),
                     std::vector<bool>(b->size(), false)};
  search.order.resize(a->size());
  std::iota(search.order.begin(), search.order.end(), 0);
  // Most constrained points first: largest minimal open sets.
  std::stable_sort(search.order.begin(), search.order.end(),
                   [&](std::size_t x, std::size_t y) {
                     return a->min_open(x).count() > a->min_open(y).count();
                   });
  if (!search.run(0)) return {SearchStatus::none, std::nullopt};
  FinMap m(a, b, std::move(search.to));
  if (!m.is_homeomorphism()) {
    throw Error("find_homeomorphism produced a non-homeomorphism");
  }
  return {SearchStatus::found, std::move(m)};
}

std::vector<PointSet> components(const FinSpace& space) {
  std::vector<PointSet> out;
  PointSet seen = space.none();
  for (std::size_t start = 0; start < space.size(); ++start) {
    if (seen.test(start)) continue;
    PointSet comp = space.singleton(start);
    PointSet frontier = comp;
    while (frontier.any()) {
      PointSet next = space.open_hull(frontier) | space.closure(frontier);
      frontier = next - comp;
      comp |= next;
    }
    seen |= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

SeparationProfile separation_profile(const FinSpace& space) {
  SeparationProfile p;
  p.t0 = true;
  for (std::size_t x = 0; x < space.size() && p.t0; ++x) {
    for (std::size_t y = x + 1; y < space.size(); ++y) {
      if (space.min_open(x) == space.min_open(y)) {
        p.t0 = false;
        break;
      }
    }
  }
  p.t1 = true;
  p.discrete = true;
  for (std::size_t x = 0; x < space.size(); ++x) {
    if (!space.is_closed(space.singleton(x))) p.t1 = false;
    if (space.min_open(x).count() != 1) p.discrete = false;
  }
  return p;
}

}  // namespace cislimit

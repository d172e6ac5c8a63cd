#include "cislimit/cis.hpp"

namespace cislimit {

Stage make_stage(SpacePtr space, PointSet y, const SpacePtr& next,
                 const std::vector<std::size_t>& table) {
  Stage st{std::move(space), std::move(y), std::nullopt};
  if (!next) return st;
  if (table.size() != st.space->size()) throw Error("stage table has wrong width");
  const auto sub = subspace(st.space, st.y);
  std::vector<std::size_t> to(sub.space->size());
  for (std::size_t x = 0; x < table.size(); ++x) {
    if ((table[x] != no_point) != st.y.test(x)) {
      throw Error("stage table is not defined exactly on Y at '" + st.space->id(x) + "'");
    }
  }
  for (std::size_t k = 0; k < to.size(); ++k) to[k] = table[sub.inclusion(k)];
  st.f = FinMap(sub.space, next, std::move(to));
  return st;
}

Cis::Cis(std::vector<Stage> stages, Tail tail)
    : stages_(std::move(stages)), tail_(tail) {
  if (stages_.empty()) throw Error("a system needs at least one stage");
  if (stationary() && tail_.n0 != last()) {
    throw Error("stationary tail must park at the last stage (n0 = " +
                std::to_string(last()) + ")");
  }
  steps_.resize(stages_.size());
  for (std::size_t i = 0; i < stages_.size(); ++i) {
    const auto& st = stages_[i];
    const auto where = "stage " + std::to_string(i) + ": ";
    if (!st.space) throw Error(where + "missing space");
    if (st.y.size() != st.space->size()) throw Error(where + "y has wrong width");
    if (i == last()) {
      if (st.f) throw Error(where + "the last stage carries no map");
      continue;
    }
    if (!st.f) throw Error(where + "missing map f");
    const auto sub = subspace(st.space, st.y);
    if (st.f->source() != *sub.space) {
      throw Error(where + "f is not defined exactly on Y");
    }
    if (st.f->target() != *stages_[i + 1].space) {
      throw Error(where + "f does not land in the next stage's space");
    }
    auto& table = steps_[i];
    table.assign(st.space->size(), no_point);
    for (std::size_t k = 0; k < sub.space->size(); ++k) {
      table[sub.inclusion(k)] = (*st.f)(k);
    }
  }
  const auto& top = stages_.back();
  identity_step_.assign(top.space->size(), no_point);
  for (std::size_t x = 0; x < identity_step_.size(); ++x) {
    if (top.y.test(x)) identity_step_[x] = x;
  }
}

std::size_t Cis::resolve(std::size_t i) const {
  if (i <= last()) return i;
  if (stationary()) return last();
  throw Error("stage index " + std::to_string(i) +
              " is past the end of a cutoff system (last = " +
              std::to_string(last()) + ")");
}

bool Cis::has_map(std::size_t i) const {
  return stationary() || i < last();
}

const std::vector<std::size_t>& Cis::step_table(std::size_t i) const {
  if (i < last()) return steps_[i];
  if (stationary()) return identity_step_;
  throw Error("f_" + std::to_string(i) + " does not exist in a cutoff system");
}

std::size_t Cis::step(std::size_t i, std::size_t x) const {
  return step_table(i).at(x);
}

FinMap Cis::total_map(std::size_t i) const {
  if (!y(i).all()) {
    throw Error("f_" + std::to_string(i) + " is not defined on all of X_" +
                std::to_string(i));
  }
  return FinMap(space_ptr(i), space_ptr(i + 1), step_table(i));
}

bool operator==(const Cis& a, const Cis& b) {
  if (&a == &b) return true;
  if (a.tail_ != b.tail_ || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& sa = a.stages_[i];
    const auto& sb = b.stages_[i];
    if (sa.space != sb.space && *sa.space != *sb.space) return false;
    if (sa.y != sb.y || a.steps_[i] != b.steps_[i]) return false;
  }
  return true;
}

ValidationReport validate_cis(const Cis& c) {
  ValidationReport r;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& st = c.stages()[i];
    const auto& x = *st.space;
    if (x.empty()) r.issues.push_back({i, "X nonempty", "X_i has no points"});
    if (!x.is_closed(st.y)) {
      const auto missing = (x.closure(st.y) - st.y).find_first();
      r.issues.push_back({i, "Y closed",
                          "closure of Y_i adds '" + x.id(missing) + "'"});
    }
    if (st.y.none()) r.empty_y.push_back(i);
    if (st.f) {
      const auto& p = st.f->profile();
      if (!p.continuous) r.issues.push_back({i, "f continuous", ""});
      if (!p.closed) r.issues.push_back({i, "f closed", ""});
      if (!p.injective) r.issues.push_back({i, "f injective", ""});
    }
  }
  if (c.stationary() && !c.y(c.last()).all()) {
    r.issues.push_back({c.last(), "stationary Y=X",
                        "the parking stage must have Y_n0 = X_n0"});
  }
  return r;
}

namespace {

// Follows every point of Y_i forward through f_i, ..., f_{k-1}, keeping those
// whose image lies in Y_k for each k in (i, j]. On return `pos` holds the
// position in X_j of every surviving point.
PointSet walk(const Cis& c, std::size_t i, std::size_t j,
              std::vector<std::size_t>& pos) {
  PointSet domain = c.y(i);
  const auto n = c.space(i).size();
  pos.assign(n, no_point);
  for (std::size_t x = 0; x < n; ++x) {
    if (domain.test(x)) pos[x] = x;
  }
  for (std::size_t k = i + 1; k <= j; ++k) {
    const auto& yk = c.y(k);
    for (std::size_t x = 0; x < n; ++x) {
      if (!domain.test(x)) continue;
      const auto moved = c.step(k - 1, pos[x]);
      if (yk.test(moved)) {
        pos[x] = moved;
      } else {
        domain.reset(x);
        pos[x] = no_point;
      }
    }
    if (domain.none()) break;
  }
  return domain;
}

}  // namespace

PointSet composite_domain(const Cis& c, std::size_t i, std::size_t j) {
  if (i > j) throw Error("composite_domain: requires i <= j");
  c.resolve(j);
  std::vector<std::size_t> pos;
  return walk(c, i, j, pos);
}

bool semicomponible(const Cis& c, std::size_t i, std::size_t j) {
  if (i > j) throw Error("semicomponible: requires i <= j");
  c.resolve(j);
  if (i == j) return true;
  return composite_domain(c, i, j).any();
}

PointSet CompositeInjection::image() const { return map.image(); }

CompositeInjection composite(const Cis& c, std::size_t i, std::size_t j) {
  if (i > j) throw Error("composite: requires i <= j");
  c.resolve(j);
  if (!c.has_map(j)) {
    throw Error("composite: f_" + std::to_string(j) + " does not exist");
  }
  std::vector<std::size_t> pos;
  PointSet domain = walk(c, i, j, pos);
  std::vector<std::size_t> table(pos.size(), no_point);
  for (auto x = domain.find_first(); x != PointSet::npos;
       x = domain.find_next(x)) {
    table[x] = c.step(j, pos[x]);
  }
  auto sub = subspace(c.space_ptr(i), domain);
  std::vector<std::size_t> to(sub.space->size());
  for (std::size_t k = 0; k < to.size(); ++k) to[k] = table[sub.inclusion(k)];
  FinMap map(sub.space, c.space_ptr(j + 1), std::move(to));
  return {i, j, std::move(domain), std::move(map), std::move(table)};
}

bool is_inductive(const Cis& c) {
  for (const auto& st : c.stages()) {
    if (!st.y.all()) return false;
  }
  return true;
}

FiniteSemicomponibility is_finitely_semicomponible(const Cis& c) {
  if (!c.stationary()) return {true, true};
  // f_{n0} is the identity on X_{n0} = Y_{n0}, semicomponible with every
  // later index.
  return {c.space(c.last()).empty(), false};
}

std::optional<std::size_t> is_stationary(const Cis& c) {
  if (!c.stationary() || !c.y(c.last()).all()) return std::nullopt;
  return c.tail().n0;
}

}  // namespace cislimit

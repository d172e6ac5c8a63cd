// Closed injective systems {X_i, Y_i, f_i}: spaces X_i, closed subspaces Y_i,
// and closed injective continuous maps f_i : Y_i -> X_{i+1}.
//
// Only finitely many stages are ever represented. The tail policy says what
// the unrepresented indices mean:
//   Cutoff        stages past the last one do not exist; every statement that
//                 quantifies over all indices is relative to the truncation.
//   Stationary n0 the last represented stage is n0, Y_n0 = X_n0, and for
//                 n >= n0 the system repeats X_n0 with identity maps. Indices
//                 past n0 ("virtual" indices) are accepted everywhere and
//                 resolve to n0.

#pragma once

#include "cislimit/finspace.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cislimit {

struct Tail {
  enum class Kind { cutoff, stationary };
  Kind kind = Kind::cutoff;
  std::size_t n0 = 0;

  static Tail cutoff() { return {}; }
  static Tail stationary(std::size_t n0) { return {Kind::stationary, n0}; }

  friend bool operator==(const Tail&, const Tail&) = default;
};

struct Stage {
  SpacePtr space;
  PointSet y;
  /// f_i : subspace(X_i, Y_i) -> X_{i+1}; absent on the last stage.
  std::optional<FinMap> f;
};

/// Sentinel in step tables: the point is outside Y_i.
inline constexpr std::size_t no_point = static_cast<std::size_t>(-1);

/// Stage from a point table on X_i (no_point outside Y_i). `next` is null
/// for the last stage. Throws Error if the table disagrees with Y_i.
Stage make_stage(SpacePtr space, PointSet y, const SpacePtr& next,
                 const std::vector<std::size_t>& table = {});

class Cis {
 public:
  /// Structural checks only (stage count, widths, f present exactly where a
  /// successor exists, f's spaces matching, stationary n0 equal to the last
  /// stage). Throws Error on malformed structure; the topological clauses
  /// are reported by validate_cis.
  Cis(std::vector<Stage> stages, Tail tail);

  std::size_t size() const { return stages_.size(); }
  std::size_t last() const { return stages_.size() - 1; }
  const Tail& tail() const { return tail_; }
  bool stationary() const { return tail_.kind == Tail::Kind::stationary; }
  const std::vector<Stage>& stages() const { return stages_; }

  /// Maps a (possibly virtual) index to its represented stage. Throws Error
  /// for an index past the end of a Cutoff system.
  std::size_t resolve(std::size_t i) const;

  const Stage& stage(std::size_t i) const { return stages_[resolve(i)]; }
  const FinSpace& space(std::size_t i) const { return *stage(i).space; }
  const SpacePtr& space_ptr(std::size_t i) const { return stage(i).space; }
  const PointSet& y(std::size_t i) const { return stage(i).y; }

  /// Whether f_i exists (always true for stationary systems).
  bool has_map(std::size_t i) const;
  /// f_i(x) as an index of X_{i+1}, or no_point when x ∉ Y_i.
  std::size_t step(std::size_t i, std::size_t x) const;
  /// f_i as a point function on all of X_i (no_point outside Y_i).
  const std::vector<std::size_t>& step_table(std::size_t i) const;

  /// f_i as a map X_i -> X_{i+1}; requires Y_i = X_i.
  FinMap total_map(std::size_t i) const;

  friend bool operator==(const Cis& a, const Cis& b);

 private:
  std::vector<Stage> stages_;
  Tail tail_;
  std::vector<std::vector<std::size_t>> steps_;
  std::vector<std::size_t> identity_step_;
};

using CisPtr = std::shared_ptr<const Cis>;

struct ValidationIssue {
  std::size_t stage = 0;
  std::string clause;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  /// Stages with empty Y_i (permitted, flagged).
  std::vector<std::size_t> empty_y;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate_cis(const Cis& c);

/// Y_{i,j}: for i < j the preimage of Y_j under f_{j-1} ∘ ... ∘ f_i, built
/// inductively; Y_{i,i} = Y_i.
PointSet composite_domain(const Cis& c, std::size_t i, std::size_t j);

/// f_i and f_j (i <= j) are semicomponible: i == j, or Y_{i,j} ≠ ∅.
bool semicomponible(const Cis& c, std::size_t i, std::size_t j);

struct CompositeInjection {
  std::size_t i = 0;
  std::size_t j = 0;
  /// Y_{i,j} ⊆ X_i.
  PointSet domain;
  /// f_{i,j} : subspace(X_i, Y_{i,j}) -> X_{j+1}.
  FinMap map;
  /// f_{i,j} on all of X_i (no_point outside the domain).
  std::vector<std::size_t> table;

  PointSet image() const;
};

/// f_{i,j}. Requires i <= j and f_j to exist.
CompositeInjection composite(const Cis& c, std::size_t i, std::size_t j);

bool is_inductive(const Cis& c);

struct FiniteSemicomponibility {
  bool value = false;
  /// The verdict only speaks about represented stages (Cutoff tail).
  bool truncation_relative = false;
};
FiniteSemicomponibility is_finitely_semicomponible(const Cis& c);

std::optional<std::size_t> is_stationary(const Cis& c);

}  // namespace cislimit

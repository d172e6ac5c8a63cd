// Random systems and the property harness behind `cislimit fuzz`.
//
// Systems are built target-first: the last space is random, and every X_i is
// a copy of a random closed C ⊆ X_{i+1} (this copy is Y_i, f_i its identity
// onto C) together with extra points whose minimal open sets avoid the copy.
// Random preorders come from transitive closures of sparse digraphs.

#pragma once

#include "cislimit/cat.hpp"
#include "cislimit/cis.hpp"
#include "cislimit/limit.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cislimit {

class FuzzRng {
 public:
  explicit FuzzRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0. Plain modulo keeps streams identical across
  /// standard libraries.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Uniform in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability num / den.
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

struct CisShape {
  std::size_t max_stages = 4;
  std::size_t max_points = 6;
  /// Y_i = X_i everywhere.
  bool inductive = false;
  /// Every space discrete.
  bool discrete = false;
  /// Chance (out of 4) of a stationary tail.
  std::size_t stationary_in_4 = 1;
};

/// Random preorder on n points named "<prefix>0".."<prefix>{n-1}".
/// `density` is the edge chance in percent.
SpacePtr random_space(FuzzRng& rng, std::size_t n, const std::string& prefix,
                      std::size_t density = 25);
/// Union of the closures of a random subset of points (possibly empty).
PointSet random_closed(FuzzRng& rng, const FinSpace& x);
/// A valid system of the given shape.
Cis random_cis(FuzzRng& rng, const CisShape& shape);

/// The same limit with its points renamed by a random permutation.
LimitSpace relabel_limit(FuzzRng& rng, const LimitSpace& ls, const std::string& prefix);

/// A random perturbation of a valid candidate: an extra uncovered point, a
/// redirected φ value, or a coarser topology. May still be a limit space.
LimitSpace mutate_limit(FuzzRng& rng, const LimitSpace& ls);

/// A random cis-morphism out of `c` built from relabelings, limit cocones
/// and collapses.
CisMorphism random_morphism(FuzzRng& rng, const CisPtr& c);

/// A chain of 2 to 4 objects starting at `c` with random arrows.
CisDiagram random_diagram(FuzzRng& rng, const CisPtr& c);

struct FuzzCheck {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::string first_failure;
  /// Reported quantity rather than a verdict.
  bool tally = false;
};

struct FuzzReport {
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::vector<FuzzCheck> checks;

  bool passed() const;
  const FuzzCheck* find(const std::string& name) const;
  /// Deterministic text: seed, count, one line per check.
  std::string text() const;
};

/// Runs every property check over `count` random systems.
FuzzReport run_fuzz(std::size_t count, std::uint64_t seed);

}  // namespace cislimit

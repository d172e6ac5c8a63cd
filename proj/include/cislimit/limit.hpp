// Limit spaces of a closed injective system and the fundamental (weak
// topology) limit built as an attaching space.
//
// Overlap rule used by the axiom checks: for stages i < j, the images of X_i
// and X_j may only meet along f_{i,j-1}(Y_{i,j-1}), which is defined when f_i
// and f_{j-1} are semicomponible (always the case for j = i + 1). When they
// are not, the images must be disjoint.

#pragma once

#include "cislimit/cis.hpp"

#include <string>
#include <vector>

namespace cislimit {

struct LimitSpace {
  SpacePtr x;
  /// φ_i : X_i -> X, one per represented stage.
  std::vector<FinMap> phis;

  /// φ_i for a possibly virtual index of `c`.
  const FinMap& phi(const Cis& c, std::size_t i) const { return phis.at(c.resolve(i)); }
};

struct AxiomCheck {
  std::string axiom;  // "L.1" ... "L.6"
  bool pass = true;
  std::vector<std::string> witnesses;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;

  bool passed() const;
  const AxiomCheck* find(std::string_view axiom) const;
  bool passed(std::string_view axiom) const;
  std::string summary() const;
};

/// Coproduct, gluing relation and quotient behind a fundamental limit.
struct AttachingSpace {
  Coproduct sum;
  /// ρ : ∐ X_i -> X̃.
  FinMap rho;
  LimitSpace limit;
};

/// Glues a chain of spaces along partial point maps steps[n] : X_n -> X_{n+1}
/// (no_point where undefined) by identifying x with steps[n][x]. Works for
/// non-injective steps as well; the result carries the final topology of the
/// legs.
AttachingSpace glue_chain(std::span<const SpacePtr> spaces,
                          std::span<const std::vector<std::size_t>> steps);

/// Attaching space of the represented stages (0..n0 for stationary systems).
AttachingSpace attaching_space(const Cis& c);

/// The attaching space's limit, after asserting that it satisfies every
/// limit axiom and carries the weak topology. Throws Error on an invalid
/// system.
LimitSpace build_fundamental(const Cis& c);

/// L.1 to L.4, with the pointwise clause of L.3.
AxiomReport verify_limit_axioms(const Cis& c, const LimitSpace& ls);

/// L.1, L.2, L.4, L.5 and L.6.
AxiomReport verify_L5_L6(const Cis& c, const LimitSpace& ls);

/// Whether X carries the final topology of the φ_i.
bool has_weak_topology(const Cis& c, const LimitSpace& ls);

struct ImagesClosed {
  bool all_closed = true;
  std::vector<std::size_t> open_stages;
};
ImagesClosed images_closed(const LimitSpace& ls);

struct CanonicalBijection {
  FinMap beta;
  bool continuous = false;
  bool homeomorphism = false;
};

/// β : X_A -> X_B with β(φ_i(x)) = ψ_i(x). Both candidates must satisfy the
/// limit axioms; when both carry the weak topology β must be a homeomorphism
/// and an Error is raised otherwise.
CanonicalBijection canonical_bijection(const Cis& c, const LimitSpace& a,
                                       const LimitSpace& b);

struct CoverProfile {
  bool pointwise_finite = false;
  bool locally_finite = false;
  bool closed_cover = false;
  bool all() const { return pointwise_finite && locally_finite && closed_cover; }
};
/// Over the represented images (finitely many), so the two finiteness flags
/// hold whenever the images cover X.
CoverProfile cover_profile(const LimitSpace& ls);

/// Closed, continuous and surjective. Fibres of maps between finite spaces
/// are finite, hence compact.
bool is_perfect_map(const FinMap& m);

}  // namespace cislimit

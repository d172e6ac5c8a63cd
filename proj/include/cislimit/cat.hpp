// The category of closed injective systems: cis-morphisms, their
// composition, induced maps between fundamental limits, and direct limits of
// finite chains of systems.

#pragma once

#include "cislimit/cis.hpp"
#include "cislimit/limit.hpp"

#include <string>
#include <vector>

namespace cislimit {

/// h_i : X_i -> Z_i for every represented stage.
struct CisMorphism {
  CisPtr source;
  CisPtr target;
  std::vector<FinMap> h;

  friend bool operator==(const CisMorphism& a, const CisMorphism& b);
};

struct MorphismReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

/// Checks h_i closed and continuous, h_i(Y_i) ⊆ W_i and
/// h_{i+1} ∘ f_i = g_i ∘ h_i on Y_i. Throws Error when the two systems have
/// different stage counts or tails, or when some h_i has the wrong spaces.
MorphismReport validate_morphism(const CisMorphism& m);

CisMorphism identity_morphism(const CisPtr& c);
/// k ∘ h. Throws Error unless h's target equals k's source.
CisMorphism compose_morphisms(const CisMorphism& k, const CisMorphism& h);
/// Every h_i a homeomorphism carrying Y_i onto W_i.
bool is_cis_isomorphism(const CisMorphism& m);

/// £h : X -> Z with £h ∘ φ_i = ψ_i ∘ h_i, between the given fundamental
/// limits. Throws Error if the morphism is invalid, if £h is not well
/// defined, or if it fails to be closed and continuous.
FinMap induced_fundamental_map(const CisMorphism& m, const LimitSpace& from,
                               const LimitSpace& to);
/// Same, building both fundamental limits.
FinMap induced_fundamental_map(const CisMorphism& m);

/// A finite chain 𝔛^(0) -> 𝔛^(1) -> ... of systems.
struct CisDiagram {
  std::vector<CisPtr> objects;
  /// arrows[n] : objects[n] -> objects[n + 1].
  std::vector<CisMorphism> arrows;

  /// 𝔥^(mn) : objects[m] -> objects[n] for m <= n (identity when m == n).
  CisMorphism arrow(std::size_t m, std::size_t n) const;
};

/// Throws Error on a malformed diagram or an invalid arrow.
void validate_diagram(const CisDiagram& d);

struct DirectLimit {
  CisPtr limit;
  /// ℰ^(n) : objects[n] -> limit, made of the column maps ξ_i^(n).
  std::vector<CisMorphism> cocone;
};

/// Glues every stage column {X_i^(n), h_i^(n)} into X_i, sets
/// Y_i = ⋃ ξ_i^(n)(Y_i^(n)) and f_i(ξ_i^(n)(y)) = ξ_{i+1}^(n)(f_i^(n)(y)).
/// Throws Error if the glued f_i is ill defined or the result is invalid.
DirectLimit cis_direct_limit(const CisDiagram& d);

/// Whether ℰ^(m) = ℰ^(n) ∘ 𝔥^(mn) for all m <= n, stagewise and pointwise.
bool cocone_commutes(const CisDiagram& d, const DirectLimit& dl);

struct CompatibilityReport {
  /// ϑ^(n) : £(𝔛^(n)) -> £(𝔛).
  std::vector<FinMap> theta;
  bool continuous = false;
  bool cocone = false;
  bool final_topology = false;
  std::vector<std::string> witnesses;

  bool passed() const { return continuous && cocone && final_topology; }
};

/// Builds ϑ^(n)(φ_i^(n)(x)) = φ_i(ξ_i^(n)(x)) and checks continuity, the
/// identities ϑ^(n) ∘ £𝔥^(mn) = ϑ^(m), and that £(𝔛) carries the final
/// topology of the ϑ family.
CompatibilityReport check_limit_compatibility(const CisDiagram& d);

}  // namespace cislimit

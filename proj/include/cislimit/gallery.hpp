// Example systems at finite scale, morphism builders, and the bounded search
// for limit spaces that are not fundamental.
//
// Sphere models: S^0 is two discrete points a, b; S^k adds two open points
// pk, qk that join the minimal open set of every older point. S^{k-1} is then
// a closed subspace of S^k and the order complex of S^k is the boundary of
// the (k+1)-dimensional cross-polytope.

#pragma once

#include "cislimit/cat.hpp"
#include "cislimit/cis.hpp"
#include "cislimit/limit.hpp"

#include <string>
#include <vector>

namespace cislimit {

inline constexpr std::size_t gallery_cap = 6;
inline constexpr std::size_t torus_cap = 3;

SpacePtr point_space();
/// {a, b} with U_a = {a}.
SpacePtr sierpinski();
/// {a, b, p, q}: p, q open, U_a = {a, p, q}, U_b = {b, p, q}.
SpacePtr circle_model();
SpacePtr sphere_model(std::size_t n);
/// Product of n circle models; ids nest as "(x,y)".
SpacePtr torus_model(std::size_t n);
/// {l, m, r}: U_m = {m}, U_l = {l, m}, U_r = {r, m}.
SpacePtr interval_model();
/// point, sierpinski, discrete2, circle, sphereK, torusK.
SpacePtr named_space(const std::string& name);

/// n copies of X with identity maps; stationary tail at n - 1 if asked.
Cis identity_system(const SpacePtr& x, std::size_t n, bool stationary);
/// S^0 -> S^1 -> ... -> S^N by equatorial inclusion.
Cis sphere_chain(std::size_t n);
/// sphere_chain with a stationary tail at N.
Cis stationary_sphere(std::size_t n);
/// T^1 -> ... -> T^N by x -> (x, a).
Cis torus_chain(std::size_t n);
/// N intervals, Y_n = {r}, f_n(r) = l.
Cis interval_chain(std::size_t n);
/// X_0 = Sierpiński {a,b}, Y_0 = {b}, f_0(b) = d; X_1 = {c,d} discrete,
/// Y_1 = {c}, f_1(c) = e; X_2 = {e}.
Cis non_semicomponible();
/// N + 1 stages: S^min(i,k), inclusions up to k, identities after.
Cis sphere_truncation(std::size_t n, std::size_t k);

struct GalleryId {
  std::string name;
  std::vector<std::string> params;
};

/// Names: identity <space> <n> [stationary], sphere_chain <N>,
/// stationary_sphere <N>, torus_chain <N>, interval_chain <N>,
/// non_semicomponible, sphere_truncation <N> <k>. Throws Error on unknown
/// names, bad parameters or exceeded caps.
Cis build_example(const GalleryId& id);
std::vector<std::string> gallery_names();

/// The same system with every point id suffixed.
Cis relabel(const Cis& c, const std::string& suffix);
/// c -> relabel(c, suffix), a cis-isomorphism.
CisMorphism relabel_morphism(const CisPtr& c, const std::string& suffix);
/// c -> the one-point system with the same stage count and tail.
CisMorphism collapse_morphism(const CisPtr& c);
/// c -> identity system on the fundamental limit X, with h_i = φ_i.
CisMorphism limit_cocone_morphism(const CisPtr& c);

/// Truncations 0..N of the sphere chain with inclusion arrows.
CisDiagram sphere_truncation_diagram(std::size_t n);
/// Two objects, c and its collapse.
CisDiagram collapse_diagram(const CisPtr& c);
/// `count` copies of c with identity arrows.
CisDiagram constant_diagram(const CisPtr& c, std::size_t count);

inline constexpr std::size_t default_search_cap = 6;

struct NonFundamentalSearch {
  SearchStatus status = SearchStatus::none;
  /// Topologies tried (all preorders refining the fundamental one with the
  /// same φ assignments and embedding images).
  std::size_t examined = 0;
  /// Candidates satisfying the limit axioms without the weak topology.
  std::vector<LimitSpace> found;
};

/// Every limit space with the fundamental φ assignments is a coarsening of
/// the fundamental topology that keeps each image's subspace topology, so
/// the search enumerates exactly those. Undecided above `cap` points.
NonFundamentalSearch search_non_fundamental(const Cis& c,
                                            std::size_t cap = default_search_cap);

}  // namespace cislimit

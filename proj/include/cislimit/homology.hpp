// Algebraic functors on finite spaces: the component functor H_0 and mod-2
// homology of order complexes, finite (co)limits of GF(2) module sequences,
// and the functorial and counter-functorial invariance checks for inductive
// systems.
//
// Homology of a finite space means homology of the order complex of its T0
// quotient. Cohomology is the dual (transpose) of homology over GF(2).

#pragma once

#include "cislimit/cis.hpp"
#include "cislimit/gf2.hpp"
#include "cislimit/limit.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cislimit {

using Simplex = std::vector<std::size_t>;

struct OrderComplex;

class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Downward closure of the given simplices (vertex indices).
  static SimplicialComplex from_facets(std::vector<std::string> vertices,
                                       const std::vector<Simplex>& facets);

  const std::vector<std::string>& vertices() const { return vertices_; }
  /// Highest dimension present, or -1 for the empty complex.
  int dimension() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(std::size_t p) const;
  /// Sorted simplices of dimension p, each with sorted vertices.
  const std::vector<Simplex>& simplices(std::size_t p) const;
  std::optional<std::size_t> index(const Simplex& s) const;
  bool contains(const Simplex& s) const { return index(s).has_value(); }

 private:
  friend OrderComplex order_complex_of(const FinSpace& space);

  std::vector<std::string> vertices_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::map<Simplex, std::size_t>> lookup_;
};

struct OrderComplex {
  SimplicialComplex complex;
  /// Vertex (T0 class) of every point of the space.
  std::vector<std::size_t> vertex_of;
  /// One point of each vertex class.
  std::vector<std::size_t> representative;
};

OrderComplex order_complex_of(const FinSpace& space);
SimplicialComplex order_complex(const FinSpace& space);

/// ∂_p : C_p -> C_{p-1}; rows index (p-1)-simplices. For p = 0 the matrix
/// has no rows.
Gf2Matrix boundary_matrix(const SimplicialComplex& k, std::size_t p);

/// b_0 .. b_pmax over GF(2).
std::vector<std::size_t> betti_mod2(const SimplicialComplex& k, std::size_t pmax);

std::size_t h0_rank(const FinSpace& space);
/// H_0 on maps: column c has a 1 in the row of the component receiving
/// component c. Throws Error for non-continuous maps.
Gf2Matrix component_matrix(const FinMap& m);

/// A chosen basis of H_p(X; GF(2)) with coordinates for arbitrary cycles.
class HomologyBasis {
 public:
  HomologyBasis(const FinSpace& space, std::size_t p);

  std::size_t p() const { return p_; }
  std::size_t dimension() const { return generators_.size(); }
  const OrderComplex& complex() const { return oc_; }
  /// Representative cycles, as vectors over the p-simplices.
  const std::vector<Gf2Vector>& generators() const { return generators_; }
  /// Class of a p-cycle in the generator basis. Throws Error if `cycle` is
  /// not a cycle.
  Gf2Vector coordinates(const Gf2Vector& cycle) const;

 private:
  std::size_t p_;
  OrderComplex oc_;
  Gf2Matrix boundary_;
  std::vector<Gf2Vector> generators_;
  Gf2Reducer reducer_;
};

/// Matrix of H_p(m) in the bases chosen by HomologyBasis. Throws Error for
/// non-continuous maps.
Gf2Matrix induced_matrix(const FinMap& m, std::size_t p);

enum class Variance { covariant, contravariant };

/// A finite chain of GF(2) vector spaces. Covariant: maps[n] goes from
/// dims[n] to dims[n+1] (shape dims[n+1] x dims[n]). Contravariant: maps[n]
/// goes from dims[n+1] to dims[n] (shape dims[n] x dims[n+1]).
struct GF2ModuleSeq {
  std::vector<std::size_t> dims;
  std::vector<Gf2Matrix> maps;
  Variance variance = Variance::covariant;

  /// Throws Error on shape mismatch.
  void check() const;
};

/// Transposes every map and flips the variance.
GF2ModuleSeq dual(const GF2ModuleSeq& s);

struct ModuleCone {
  std::size_t dim = 0;
  /// Colimit: legs[n] : dims[n] -> M. Limit: legs[n] : M -> dims[n].
  std::vector<Gf2Matrix> legs;
};

/// Direct limit of a covariant chain: the last module, with composite legs.
ModuleCone module_colimit(const GF2ModuleSeq& s);
/// Inverse limit of a contravariant chain: the last module, with composite
/// legs.
ModuleCone module_limit(const GF2ModuleSeq& s);

struct InvarianceReport {
  std::size_t p = 0;
  /// dim F(X) (or G(X)) of the fundamental limit.
  std::size_t limit_dim = 0;
  /// dim of the module (co)limit M.
  std::size_t module_dim = 0;
  bool exists = false;
  bool unique = false;
  bool isomorphism = false;
  std::optional<Gf2Matrix> h;

  bool passed() const {
    return exists && unique && isomorphism && limit_dim == module_dim;
  }
  std::string summary() const;
};

/// Homology sequence {H_p(X_i), H_p(f_i)} of an inductive system.
GF2ModuleSeq homology_sequence(const Cis& c, std::size_t p);

/// Finds h : H_p(X) -> M with ψ_i = h ∘ H_p(φ_i). Throws Error when the system
/// is not inductive.
InvarianceReport functorial_invariance_check(const Cis& c, std::size_t p);
/// Finds h : M -> H^p(X) with ψ_i = H^p(φ_i) ∘ h.
InvarianceReport counter_functorial_check(const Cis& c, std::size_t p);

}  // namespace cislimit

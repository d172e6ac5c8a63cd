// Finite topological spaces.
//
// A finite space is an Alexandrov space: every point x has a smallest open
// set U_x, and the family {U_x} determines the topology completely. Spaces
// here are stored only through that family, indexed by the position of each
// point identifier in the (sorted) identifier list. Every finite space is
// compact, so compactness never needs to be computed.

#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cislimit {

/// Set of points of one space, indexed by point position.
using PointSet = boost::dynamic_bitset<>;

/// Raised on malformed input: unknown identifiers, broken invariants,
/// mismatched shapes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FinSpace;
using SpacePtr = std::shared_ptr<const FinSpace>;

class FinSpace {
 public:
  /// The empty space.
  FinSpace() = default;

  /// Builds a space from identifiers and minimal open sets given by position
  /// in `ids`. Identifiers are re-sorted; `min_open[k]` belongs to `ids[k]`.
  /// Throws Error naming the offending point if x ∉ U_x or U_y ⊄ U_x for
  /// some y ∈ U_x.
  static FinSpace from_min_open(std::vector<std::string> ids,
                                std::vector<PointSet> min_open);

  /// Same, with minimal open sets given by identifier.
  static FinSpace from_ids(
      const std::vector<std::string>& ids,
      const std::map<std::string, std::vector<std::string>>& min_open);

  static FinSpace discrete(std::vector<std::string> ids);
  static FinSpace indiscrete(std::vector<std::string> ids);

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& id(std::size_t x) const { return ids_.at(x); }

  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws Error for an unknown identifier.
  std::size_t index_of(std::string_view id) const;

  /// U_x.
  const PointSet& min_open(std::size_t x) const { return up_.at(x); }
  /// cl{x} = {y : x ∈ U_y}.
  const PointSet& point_closure(std::size_t x) const { return down_.at(x); }
  /// Specialization order: y ≤ x iff y ∈ cl{x}.
  bool below(std::size_t y, std::size_t x) const { return down_[x].test(y); }

  PointSet none() const { return PointSet(size()); }
  PointSet all() const { return ~none(); }
  PointSet singleton(std::size_t x) const;

  PointSet closure(const PointSet& a) const;
  /// Smallest open set containing `a`.
  PointSet open_hull(const PointSet& a) const;
  bool is_open(const PointSet& a) const;
  bool is_closed(const PointSet& a) const;

  PointSet to_set(std::span<const std::string> ids) const;
  std::vector<std::string> to_ids(const PointSet& a) const;

  friend bool operator==(const FinSpace& a, const FinSpace& b) {
    return a.ids_ == b.ids_ && a.up_ == b.up_;
  }

 private:
  std::vector<std::string> ids_;
  std::vector<PointSet> up_;
  std::vector<PointSet> down_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

template <typename... Args>
SpacePtr make_space(Args&&... args) {
  return std::make_shared<const FinSpace>(std::forward<Args>(args)...);
}

struct MapProfile {
  bool continuous = false;
  bool closed = false;
  bool injective = false;
  bool surjective = false;
  bool embedding = false;

  friend bool operator==(const MapProfile&, const MapProfile&) = default;
};

/// A point function between finite spaces. Not necessarily continuous; the
/// profile records what it is and is computed once at construction.
class FinMap {
 public:
  FinMap(SpacePtr source, SpacePtr target, std::vector<std::size_t> assignment);

  /// Throws Error if the assignment is not total or names unknown points.
  static FinMap from_ids(SpacePtr source, SpacePtr target,
                         const std::map<std::string, std::string>& assignment);
  static FinMap identity(SpacePtr space);
  static FinMap constant(SpacePtr source, SpacePtr target, std::size_t value);

  const FinSpace& source() const { return *source_; }
  const FinSpace& target() const { return *target_; }
  const SpacePtr& source_ptr() const { return source_; }
  const SpacePtr& target_ptr() const { return target_; }

  std::size_t operator()(std::size_t x) const { return to_[x]; }
  const std::vector<std::size_t>& assignment() const { return to_; }
  std::map<std::string, std::string> to_id_map() const;

  PointSet image(const PointSet& a) const;
  PointSet image() const { return image(source_->all()); }
  PointSet preimage(const PointSet& b) const;

  const MapProfile& profile() const { return profile_; }
  bool is_homeomorphism() const;

  /// Inverse of a bijection, or nullopt.
  std::optional<FinMap> inverse() const;

  /// Same spaces (by value) and same assignment.
  friend bool operator==(const FinMap& a, const FinMap& b);

 private:
  SpacePtr source_;
  SpacePtr target_;
  std::vector<std::size_t> to_;
  MapProfile profile_;
};

/// g ∘ f. Throws Error unless f's target equals g's source.
FinMap compose(const FinMap& g, const FinMap& f);

/// Recomputes the profile from the definitions.
MapProfile classify_map(const FinMap& m);

PointSet set_closure(const FinSpace& space, const PointSet& a);
PointSet set_closure(const FinSpace& space, std::span<const std::string> ids);

struct Subspace {
  SpacePtr space;
  FinMap inclusion;
};
Subspace subspace(const SpacePtr& space, const PointSet& a);

struct Coproduct {
  SpacePtr space;
  std::vector<FinMap> injections;
};
/// Points of summand k are relabeled "k:<id>".
Coproduct coproduct(std::span<const SpacePtr> spaces);
std::string coproduct_label(std::size_t summand, std::string_view id);

struct Quotient {
  SpacePtr space;
  FinMap projection;
};
/// Each class is named after its first member (in identifier order).
Quotient quotient(const SpacePtr& space, std::span<const PointSet> partition);
/// Quotient by a class label per point (labels need not be contiguous).
Quotient quotient_by_labels(const SpacePtr& space,
                            std::span<const std::size_t> labels);

/// Points are named "(x,y)".
FinSpace product(const FinSpace& a, const FinSpace& b);
std::string pair_label(std::string_view a, std::string_view b);

/// One leg of a final-topology family: a source space and where each of its
/// points lands among the carrier's points.
struct Leg {
  SpacePtr source;
  std::vector<std::size_t> to;
};

/// Finest topology on `points` making every leg continuous.
FinSpace final_space(std::vector<std::string> points, std::span<const Leg> legs);
/// Final topology on the carrier's point set for maps into it (the carrier's
/// own topology is ignored).
FinSpace final_space(const FinSpace& carrier, std::span<const FinMap> maps);

enum class SearchStatus { found, none, undecided };

struct HomeomorphismResult {
  SearchStatus status = SearchStatus::none;
  std::optional<FinMap> map;
};

inline constexpr std::size_t default_homeomorphism_cap = 12;

HomeomorphismResult find_homeomorphism(const SpacePtr& a, const SpacePtr& b,
                                       std::size_t cap = default_homeomorphism_cap);

/// Connected components of the graph joining x and y whenever x ∈ U_y or y ∈ U_x.
std::vector<PointSet> components(const FinSpace& space);

struct SeparationProfile {
  bool t0 = false;
  bool t1 = false;
  bool discrete = false;
};
SeparationProfile separation_profile(const FinSpace& space);

}  // namespace cislimit

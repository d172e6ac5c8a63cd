// JSON interchange documents.
//
//   space     {"points": [id...], "min_open": {id: [id...]}}
//   cis       {"stages": [{"space": space, "y": [id...], "f": {id: id}}...],
//              "tail": {"kind": "cutoff"} | {"kind": "stationary", "n0": k}}
//   limit     {"space": space, "phis": [{id: id}...]}
//   morphism  {"source": cis, "target": cis, "h": [{id: id}...]}
//   diagram   {"objects": [cis...], "arrows": [{"h": [{id: id}...]}...]}
//   matrix    [[0, 1, ...]...]
//
// Parse failures raise InputError carrying a JSON path (or a line number for
// syntax errors).

#pragma once

#include "cislimit/cat.hpp"
#include "cislimit/cis.hpp"
#include "cislimit/gf2.hpp"
#include "cislimit/limit.hpp"

#include <json.hpp>

#include <string>

namespace cislimit {

using Json = nlohmann::json;

class InputError : public Error {
 public:
  using Error::Error;
};

/// Parses JSON text; syntax errors report the line. `origin` prefixes
/// messages (typically the file name).
Json parse_json(const std::string& text, const std::string& origin = "input");
Json read_json_file(const std::string& path);

Json space_to_json(const FinSpace& x);
SpacePtr space_from_json(const Json& j, const std::string& path = "$");

Json cis_to_json(const Cis& c);
Cis cis_from_json(const Json& j, const std::string& path = "$");

Json limit_to_json(const LimitSpace& ls);
/// φ_i are read against the stages of `c`.
LimitSpace limit_from_json(const Json& j, const Cis& c, const std::string& path = "$");

Json morphism_to_json(const CisMorphism& m);
CisMorphism morphism_from_json(const Json& j, const std::string& path = "$");

Json diagram_to_json(const CisDiagram& d);
CisDiagram diagram_from_json(const Json& j, const std::string& path = "$");

Json matrix_to_json(const Gf2Matrix& m);
Gf2Matrix matrix_from_json(const Json& j, std::size_t cols = 0,
                           const std::string& path = "$");

/// Point map as {id: id}.
Json map_to_json(const FinMap& m);
FinMap map_from_json(const Json& j, const SpacePtr& source, const SpacePtr& target,
                     const std::string& path = "$");

/// Digraph with an edge y -> x when y ∈ U_x, y ≠ x, transitively reduced
/// (points with equal minimal open sets keep their mutual edges).
std::string to_dot(const FinSpace& x, const std::string& name = "space");

}  // namespace cislimit

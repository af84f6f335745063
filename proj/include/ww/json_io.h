#pragma once
// JSON readers/writers for the on-disk formats.  Writers are canonical:
// key order is fixed and arrays follow declaration order, so equal values
// serialize to identical bytes.

#include <string>

#include "json.hpp"
#include "ww/game.h"
#include "ww/hypergraph.h"
#include "ww/wagonwheel.h"

namespace ww {

using json = nlohmann::ordered_json;

json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const json& j);

// Wagon wheels serialize as their hypergraph plus an "index" block mapping
// the structured names (wheel, position, layer / edge family) onto ids.  The
// reader rebuilds the wheel from the index and insists the rest of the file
// matches it exactly.
json to_json(const WagonWheel& w);
WagonWheel wagon_wheel_from_json(const json& j);

json to_json(const GeneralizedMorphism& m);
// Morphism files carry only the maps; source and target are supplied by the caller.
GeneralizedMorphism morphism_from_json(const json& j, const Hypergraph& source,
                                       const Hypergraph& target);

// Linear systems serialize as their variable list plus one row per
// constraint; the mod-2 reduction record is construction metadata and does
// not travel.
json to_json(const LinearSystem& ls);
LinearSystem linear_system_from_json(const json& j);

// Game rules record with explicit answer tables; write-only.
json to_json(const NonlocalGame& g);

json to_json(const OperatorSolution& sol);
OperatorSolution operator_solution_from_json(const json& j);

// dump(2) with a trailing newline; all tools write JSON through this.
std::string pretty(const json& j);

} // namespace ww

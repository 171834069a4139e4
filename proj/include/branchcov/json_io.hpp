#pragma once

#include <json.hpp>

#include "branchcov/classify.hpp"
#include "branchcov/factorization.hpp"
#include "branchcov/group.hpp"
#include "branchcov/partition.hpp"
#include "branchcov/realize.hpp"

namespace branchcov {

using json = nlohmann::json;

json to_json(const Partition& p);
json to_json(const BranchDatum& datum);     // {"d": 9, "partitions": [[6,1,1,1], ...]}
BranchDatum datum_from_json(const json& j);

json to_json(const Factorization& f);       // {"u":3,"w":3,"U":[...],"W":[...]}
json to_json(const BlockSystem& sys);       // sorted blocks, 1-based points

// Witness object embedding its datum so it re-verifies standalone:
// {"d":..., "partitions":..., "alphas":[cycle strings], "omega":"...",
//  "verdict":"primitive"|"imprimitive", "blocks":[...]?}
json to_json(const RealizationWitness& w);
RealizationWitness witness_from_json(const json& j);

json to_json(const Classification& c);
json to_json(const OracleResult& r);
json to_json(const WitnessReport& r);
json to_json(const TheoremReportEntry& e);

}  // namespace branchcov

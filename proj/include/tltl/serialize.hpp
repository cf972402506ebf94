#pragma once
// Text and JSON renderings of witnesses and statistics.

#include <json.hpp>
#include <string>

#include "tltl/tableau.hpp"
#include "tltl/witness.hpp"

namespace tltl {

using Json = nlohmann::ordered_json;

/// One row per state: index, atom, x, y, timing values, propositions.
/// Cycle rows are marked with '*'.
std::string witness_table(const TimedWitness& w);

Json to_json(const TimedWitness& w);
/// Inverse of to_json; throws std::invalid_argument on malformed input.
TimedWitness witness_from_json(const Json& j);

Json to_json(const Lasso& l);
Json to_json(const TableauStats& s);

}  // namespace tltl

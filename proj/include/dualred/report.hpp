#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "dualred/ce.hpp"
#include "dualred/dual.hpp"
#include "dualred/game.hpp"
#include "dualred/nash.hpp"
#include "dualred/reduction.hpp"

namespace dualred {

using Json = nlohmann::ordered_json;

/// JSON documents for reports. Every number is an exact rational string;
/// players are 0-based indices and strategies appear by label.
Json to_json(const Rational& value);
Json to_json(const Distribution& weights);
Json profile_json(const Game& game, std::size_t profile);
Json mixed_profile_json(const Game& game, const MixedProfile& sigma);
Json correlated_json(const Game& game, const CorrelatedStrategy& mu);
Json game_json(const Game& game);
Json ce_report_json(const Game& game, const CeReport& report);
Json dual_json(const Game& game, const DeviationProfile& alpha);
Json reduced_json(const ReducedGame& reduced);
Json trace_json(const ReductionTrace& trace, PolicyKind policy);
Json nash_json(const Game& game, const NashReport& report);
Json conditions_json(const Game& game, const ConditionsReport& report);

/// Indented `key: value` rendering of a report for terminal output.
std::string render_text(const Json& doc);

}  // namespace dualred

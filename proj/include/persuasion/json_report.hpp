#pragma once
// JSON serialization for the report types. Every document carries an echo of
// the fully resolved inputs (profile, signal, seed, tie rule, tool version)
// so a run can be reproduced from its output alone.

#include <optional>
#include <string>

#include <json.hpp>

#include "persuasion/analysis.hpp"
#include "persuasion/core.hpp"
#include "persuasion/extensions.hpp"
#include "persuasion/oracle.hpp"
#include "persuasion/simulate.hpp"

namespace persuasion {

inline constexpr const char* kToolName = "persuade";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::json tool_info();

nlohmann::json to_json(const PopulationProfile& profile);
nlohmann::json to_json(const SignalSpec& signal);
nlohmann::json to_json(const CandidateSignal& candidate);
nlohmann::json to_json(const ManipulabilityReport& report);
nlohmann::json to_json(const GridReport& report, bool include_optimal_set = true);
nlohmann::json to_json(const Lemma1Report& report);
nlohmann::json to_json(const ElectionResult& result);
nlohmann::json to_json(const ContinuousReport& report);
nlohmann::json to_json(const TargetedReport& report);
nlohmann::json to_json(const StronglyTargetedReport& report);
nlohmann::json to_json(const PublicCompareReport& report);

const char* to_string(StateOfWorld state);
const char* to_string(TieRule tie);

}  // namespace persuasion

#include "persuasion/json_report.hpp"

namespace persuasion {

using nlohmann::json;

const char* to_string(StateOfWorld state) {
  return state == StateOfWorld::kThetaA ? "A" : "B";
}

const char* to_string(TieRule tie) {
  return tie == TieRule::kFavorA ? "favor-a" : "favor-b";
}

json tool_info() {
  return {{"name", kToolName}, {"version", kToolVersion}};
}

json to_json(const PopulationProfile& profile) {
  return {{"lambda", profile.lambda()},
          {"q_low", profile.q_low()},
          {"q_high", profile.q_high()}};
}

json to_json(const SignalSpec& signal) {
  json j = {{"alpha", signal.alpha()},
            {"beta", signal.beta()},
            {"informative", signal.informative()}};
  const SignalConditionals cond = posteriors_to_conditionals(signal);
  j["conditionals"] = {{"pro_a_given_theta_a", cond.a_given_theta_a},
                       {"pro_a_given_theta_b", cond.a_given_theta_b}};
  if (const auto b = bias(signal)) j["bias"] = *b;
  return j;
}

json to_json(const CandidateSignal& candidate) {
  json j = to_json(candidate.signal);
  j["id"] = to_string(candidate.id);
  j["b_share_theta_b"] = candidate.b_share_theta_b;
  j["a_share_theta_b"] = candidate.a_share_theta_b;
  j["optimal"] = candidate.optimal;
  return j;
}

json to_json(const ManipulabilityReport& report) {
  json j;
  j["classification"] = to_string(report.classification);
  j["uninformative_a_share_theta_b"] = report.uninformative_a_share_theta_b;
  j["candidates"] = json::array();
  for (const CandidateSignal& c : report.candidates)
    j["candidates"].push_back(to_json(c));
  j["witnesses"] = json::array();
  for (const CandidateSignal& w : report.witnesses)
    j["witnesses"].push_back(to_json(w));
  j["bias_signs"] =
      report.bias_signs ? json(to_string(*report.bias_signs)) : json(nullptr);
  return j;
}

json to_json(const GridReport& report, bool include_optimal_set) {
  json j;
  j["resolution"] = report.resolution;
  j["classification"] = to_string(report.classification);
  j["max_share"] = report.max_share;
  j["uninformative_a_share_theta_b"] = report.uninformative_a_share_theta_b;
  j["optimal_count"] = report.optimal_set.size();
  if (report.bias_range)
    j["bias_range"] = {report.bias_range->first, report.bias_range->second};
  else
    j["bias_range"] = nullptr;
  if (include_optimal_set) {
    j["optimal_set"] = json::array();
    for (const GridSignal& g : report.optimal_set) {
      j["optimal_set"].push_back({{"alpha", g.signal.alpha()},
                                  {"beta", g.signal.beta()},
                                  {"a_share_theta_b", g.a_share_theta_b},
                                  {"bias", g.bias}});
    }
  }
  return j;
}

json to_json(const Lemma1Report& report) {
  return {{"verified", report.verified},
          {"discrepancies", report.discrepancies}};
}

json to_json(const ElectionResult& result) {
  json j;
  j["state"] = to_string(result.state);
  j["n_voters"] = result.n_voters;
  j["trials"] = result.trials;
  j["a_wins"] = result.a_wins;
  j["a_win_frequency"] = result.a_win_frequency;
  j["mean_a_share"] = result.mean_a_share;
  j["variance_a_share"] = result.variance_a_share;
  j["exact_a_share"] = result.exact_a_share;
  if (!result.a_votes_per_trial.empty())
    j["a_votes_per_trial"] = result.a_votes_per_trial;
  return j;
}

json to_json(const ContinuousReport& report) {
  json j;
  j["analytic"] = to_string(report.analytic);
  j["manipulable"] = report.manipulable;
  j["method"] = report.method;
  j["max_a_share_theta_b"] = report.max_a_share_theta_b
                                 ? json(*report.max_a_share_theta_b)
                                 : json(nullptr);
  j["best_signal"] =
      report.best_signal ? to_json(*report.best_signal) : json(nullptr);
  return j;
}

json to_json(const TargetedReport& report) {
  json j;
  j["manipulable"] = report.manipulable;
  j["lhs"] = report.lhs;
  j["plans"] = json::array();
  for (const ClassSignalPlan& p : report.plans) {
    j["plans"].push_back({{"accuracy", p.accuracy},
                          {"weight", p.weight},
                          {"signal", to_json(p.signal)},
                          {"a_share_theta_b", p.a_share_theta_b},
                          {"at_crossover", p.at_crossover}});
  }
  return j;
}

json to_json(const StronglyTargetedReport& report) {
  return {{"manipulable", report.manipulable}, {"lhs", report.lhs}};
}

json to_json(const PublicCompareReport& report) {
  return {{"private_classification", to_string(report.private_classification)},
          {"best_public_signal", to_json(report.best_public_signal)},
          {"public_p_a_theta_a", report.public_p_a_theta_a},
          {"public_p_a_theta_b", report.public_p_a_theta_b},
          {"preferred_medium", report.preferred_medium}};
}

}  // namespace persuasion

#pragma once
// Closed-form manipulability analysis: the q_NI / q-bar / lambda-under
// thresholds, the six candidate signals with their closed-form vote shares,
// classification of population profiles, and bias-direction diagnosis.

#include <optional>
#include <string>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

// The six candidate signals, (alpha, beta) in {q_low, q_high} x {0, 1 - q_high,
// 1 - q_low}. First letter names alpha (L -> q_low, H -> q_high), second names
// beta (0 -> 0, H -> 1 - q_high, L -> 1 - q_low).
enum class CandidateId { kL0, kH0, kLL, kLH, kHL, kHH };

const char* to_string(CandidateId id);

struct CandidateSignal {
  CandidateId id;
  SignalSpec signal;
  double b_share_theta_b;  // closed form for the share of B voters in theta_B
  double a_share_theta_b;  // 1 - b_share via exhaustive cell summation
  double bias;
  bool optimal;            // elects A in theta_B (share >= 1/2, A-favorable)
};

enum class Manipulability { kAlwaysA, kManipulable, kNotManipulable };

const char* to_string(Manipulability m);

enum class BiasSignSummary {
  kAllPositive,
  kAllNonPositive,   // no positive bias, at least one zero
  kAllNegative,
  kMixed,            // strictly positive and strictly negative witnesses
  kContainsUnbiased  // an unbiased witness alongside positive ones
};

const char* to_string(BiasSignSummary s);

struct ManipulabilityReport {
  Manipulability classification;
  double uninformative_a_share_theta_b;
  std::vector<CandidateSignal> candidates;  // full evaluated candidate set
  std::vector<CandidateSignal> witnesses;   // nonempty iff kManipulable
  std::optional<BiasSignSummary> bias_signs;  // set iff kManipulable
};

// Accuracy threshold below which A is chosen in both states with no designer
// signal at all: q_NI(lambda) = 1 / (2 (1 - lambda)). May exceed 1, meaning
// AlwaysA for every accuracy; lambda = 1 returns +inf (AlwaysA regardless).
double q_ni(double lambda);

// Manipulability threshold for partially uninformed populations:
// q_bar(lambda) = (-lambda + sqrt(lambda^2 + 2 - 2 lambda)) / (2 - 2 lambda),
// decreasing in lambda. Undefined at lambda = 1 (throws).
double q_bar(double lambda);

// Largest low-accuracy share for which the unbiased signal (q_high, 1 - q_high)
// still works: lambda_under(q_high) = (1/2 - q_high^2) / (q_high (1 - q_high)).
// Domain: q_high in (1/2, sqrt(2)/2]; throws outside.
double lambda_under(double q_high);

// The Lemma-1 candidate set for the profile's effective accuracy classes.
// Homogeneous profiles collapse to {(q, 0), (q, 1 - q)}; an uninformative low
// class (q_low = 1/2) drops the degenerate rows, leaving
// {(q_high, 0), (q_high, 1 - q_high)}. Duplicates are removed.
std::vector<CandidateSignal> candidate_signals(const PopulationProfile& profile);

// AlwaysA if the uninformative signal already elects A in theta_B; otherwise
// Manipulable iff some candidate elects A in theta_B (the candidate set is
// sufficient: every optimal signal rounds down to an optimal candidate).
ManipulabilityReport classify(const PopulationProfile& profile);

struct BiasDirection {
  BiasSignSummary signs;
  std::vector<std::string> regime_tags;
};

// Sign summary of the witness biases plus analytic-regime tags. Throws
// std::invalid_argument when the profile is not Manipulable.
BiasDirection bias_direction(const PopulationProfile& profile);

// Minimal lambda at which the high-lambda branch becomes manipulable for fixed
// accuracies: the smallest root in [0, 1] of "candidate B-share = 1/2" over the
// four candidates whose B-share decreases in lambda, located by bisection to
// 1e-9. nullopt when no candidate crosses within [0, 1].
std::optional<double> min_lambda_high_manipulable(double q_low, double q_high);

struct LambdaInterval {
  double lo;
  double hi;
};

// Maximal lambda-intervals over which the profile (lambda, q_low, q_high) is
// Manipulable with all witness biases strictly positive (resp. strictly
// negative). Located by scanning lambda at step 1e-3 and refining interval
// endpoints by bisection to 1e-9.
std::vector<LambdaInterval> positive_bias_lambda_intervals(double q_low,
                                                           double q_high);
std::vector<LambdaInterval> negative_bias_lambda_intervals(double q_low,
                                                           double q_high);

}  // namespace persuasion

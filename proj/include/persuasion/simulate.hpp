#pragma once
// Finite-population Monte Carlo election simulator. Each trial samples, per
// voter, an accuracy class, an exogenous realization, and a designer
// realization, applies sincere voting and tallies the majority. Per-trial
// randomness is derived from (seed, trial index) so results are deterministic
// and independent of execution order.

#include <cstdint>
#include <vector>

#include "persuasion/core.hpp"

namespace persuasion {

struct SimConfig {
  int n_voters = 1001;  // odd recommended: even counts make the tie rule bite
  int trials = 200;
  std::uint64_t seed = 1;
  TieRule tie = TieRule::kFavorA;
  // Deterministic round(lambda * n) low-accuracy voters instead of i.i.d.
  // accuracy draws (variance-reduction comparison mode).
  bool fixed_split = false;
  bool keep_tallies = false;
};

struct ElectionResult {
  StateOfWorld state;
  int n_voters = 0;
  int trials = 0;
  int a_wins = 0;
  double a_win_frequency = 0.0;
  double mean_a_share = 0.0;
  double variance_a_share = 0.0;  // sample variance across trials
  double exact_a_share = 0.0;     // continuum benchmark for the same inputs
  std::vector<int> a_votes_per_trial;  // filled when keep_tallies is set
};

ElectionResult simulate(const PopulationProfile& profile,
                        const SignalSpec& signal, StateOfWorld state,
                        const SimConfig& config);

// Probability that a lone sincere decision-maker picks the state's better
// alternative. Exact (no sampling).
double single_voter(double accuracy, const SignalSpec& signal,
                    StateOfWorld state, TieRule tie = TieRule::kFavorA);
double single_voter(const PopulationProfile& profile, const SignalSpec& signal,
                    StateOfWorld state, TieRule tie = TieRule::kFavorA);

// No-designer baseline: empirical frequency of a correct majority when every
// voter follows an accuracy-q exogenous signal. Evaluated in state theta_B,
// where the A-favorable tie rule works against correctness; use odd n_voters
// to keep ties off the table. Requires accuracy > 1/2.
double condorcet_baseline(double accuracy, int n_voters, int trials,
                          std::uint64_t seed);

}  // namespace persuasion

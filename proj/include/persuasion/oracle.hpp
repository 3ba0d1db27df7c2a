#pragma once
// Independent brute-force verification: exhaustive grid search over the binary
// signal space, closure checks for the candidate-set reduction, and the
// executable decomposition algorithms for many-realization signals.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/analysis.hpp"
#include "persuasion/core.hpp"

namespace persuasion {

// A signal with n realizations, stored as the posteriors it induces on theta_A
// (strictly decreasing) and their unconditional probabilities. Realizations
// with equal posteriors are merged and zero-probability ones dropped at
// construction; the remaining list must sum to 1 and satisfy Bayes
// plausibility (sum alpha_i p_i = 1/2).
class MultiSignal {
 public:
  MultiSignal(std::vector<double> posteriors, std::vector<double> probs);

  static MultiSignal from_binary(const SignalSpec& signal);

  const std::vector<double>& posteriors() const { return posteriors_; }
  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return posteriors_.size(); }
  bool informative() const { return posteriors_.size() > 1; }

  // P(realization i | state).
  double conditional_prob(std::size_t i, StateOfWorld state) const;

 private:
  std::vector<double> posteriors_;
  std::vector<double> probs_;
};

// Share of A votes under a many-realization signal (exhaustive expectation).
double multi_vote_share(const PopulationProfile& profile,
                        const MultiSignal& signal, StateOfWorld state,
                        TieRule tie = TieRule::kFavorA);

struct GridSignal {
  SignalSpec signal;
  double a_share_theta_b;
  double bias;
};

struct GridReport {
  double resolution;
  std::vector<GridSignal> optimal_set;  // signals electing A in theta_B
  double max_share;
  // (min, max) bias over the optimal set; empty when no signal is optimal.
  std::optional<std::pair<double, double>> bias_range;
  double uninformative_a_share_theta_b;
  Manipulability classification;  // the oracle's own view of the profile
};

// Exhaustive evaluation of exact_vote_share(theta_B) over beta in [0, 1/2),
// alpha in (1/2, 1], with the candidate signals always injected exactly (the
// optima sit at profile-dependent points no uniform grid hits). Requires
// step in (0, 0.01].
GridReport grid_search(const PopulationProfile& profile, double step,
                       TieRule tie = TieRule::kFavorA);

struct Lemma1Report {
  bool verified;
  std::vector<std::string> discrepancies;
};

// Checks the candidate-set closure on the grid: some grid signal is optimal
// iff some candidate (or, for AlwaysA profiles, the uninformative signal) is,
// and every grid-optimal signal stays optimal after rounding (alpha, beta)
// down onto the candidate value sets.
Lemma1Report verify_lemma1(const PopulationProfile& profile, double step);

struct Decomposition {
  double eta;
  MultiSignal s1;
  MultiSignal s2;
};

// Splits an informative signal with n > 2 realizations into a mixture
// eta * s1 + (1 - eta) * s2 of signals with strictly smaller supports sharing
// at most one realization (with equal posteriors at the shared one); s1 is the
// binary (alpha_1, alpha_n) signal. A single-realization (uninformative)
// signal returns the trivial decomposition; binary signals are rejected.
Decomposition decompose(const MultiSignal& signal);

// Repeatedly decomposes, keeping the sub-signal with the weakly higher A-share
// in theta_B (s1 on ties), until at most two realizations remain. The result
// never has a lower A-share in theta_B than the input.
SignalSpec reduce_to_binary(const MultiSignal& signal,
                            const PopulationProfile& profile,
                            TieRule tie = TieRule::kFavorA);

}  // namespace persuasion

#include "persuasion/simulate.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace persuasion {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Engine for one trial, decorrelated from neighboring trial indices.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) + trial));
}

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Votes for the four (exogenous, designer) realization cells of one accuracy.
struct CellVotes {
  bool vote_a[2][2];  // [exo_pro_a][designer_pro_a]
};

CellVotes cell_votes(double accuracy, const SignalSpec& signal, TieRule tie) {
  const double post_pro_a = signal.informative() ? signal.alpha() : 0.5;
  const double post_pro_b = signal.informative() ? signal.beta() : 0.5;
  CellVotes v{};
  for (const int exo : {0, 1})
    for (const int des : {0, 1}) {
      const double exo_post = exo ? accuracy : 1.0 - accuracy;
      const double des_post = des ? post_pro_a : post_pro_b;
      // The contradictory pairs {0,1} only arise for zero-probability cells,
      // which the sampler never draws; vote arbitrarily there.
      const double num = exo_post * des_post;
      const double den = num + (1.0 - exo_post) * (1.0 - des_post);
      const double post = den > 0.0 ? num / den : 0.5;
      v.vote_a[exo][des] =
          sincere_vote(Belief(post), tie) == Alternative::kA;
    }
  return v;
}

}  // namespace

ElectionResult simulate(const PopulationProfile& profile,
                        const SignalSpec& signal, StateOfWorld state,
                        const SimConfig& config) {
  if (config.n_voters < 1) throw std::invalid_argument("n_voters must be >= 1");
  if (config.trials < 1) throw std::invalid_argument("trials must be >= 1");

  const SignalConditionals cond = posteriors_to_conditionals(signal);
  const double p_designer_pro_a = state == StateOfWorld::kThetaA
                                      ? cond.a_given_theta_a
                                      : cond.a_given_theta_b;
  const bool theta_a = state == StateOfWorld::kThetaA;
  // P(exogenous pro-A realization | state) per accuracy class.
  const double p_exo_low = theta_a ? profile.q_low() : 1.0 - profile.q_low();
  const double p_exo_high = theta_a ? profile.q_high() : 1.0 - profile.q_high();
  const CellVotes low = cell_votes(profile.q_low(), signal, config.tie);
  const CellVotes high = cell_votes(profile.q_high(), signal, config.tie);

  const long long n_low_fixed =
      std::llround(profile.lambda() * config.n_voters);

  ElectionResult result;
  result.state = state;
  result.n_voters = config.n_voters;
  result.trials = config.trials;
  result.exact_a_share = exact_vote_share(profile, signal, state, config.tie);
  if (config.keep_tallies) result.a_votes_per_trial.reserve(config.trials);

  double sum_share = 0.0;
  double sum_share_sq = 0.0;
  for (int trial = 0; trial < config.trials; ++trial) {
    std::mt19937_64 eng = trial_engine(config.seed, trial);
    int a_votes = 0;
    for (int voter = 0; voter < config.n_voters; ++voter) {
      const bool is_low = config.fixed_split
                              ? voter < n_low_fixed
                              : uniform01(eng) < profile.lambda();
      const CellVotes& votes = is_low ? low : high;
      const bool exo_pro_a =
          uniform01(eng) < (is_low ? p_exo_low : p_exo_high);
      const bool designer_pro_a = uniform01(eng) < p_designer_pro_a;
      if (votes.vote_a[exo_pro_a][designer_pro_a]) ++a_votes;
    }
    const double share = static_cast<double>(a_votes) / config.n_voters;
    sum_share += share;
    sum_share_sq += share * share;
    if (election_outcome(share, config.tie) == Alternative::kA)
      ++result.a_wins;
    if (config.keep_tallies) result.a_votes_per_trial.push_back(a_votes);
  }

  result.a_win_frequency =
      static_cast<double>(result.a_wins) / config.trials;
  result.mean_a_share = sum_share / config.trials;
  if (config.trials > 1) {
    const double mean = result.mean_a_share;
    result.variance_a_share =
        (sum_share_sq - config.trials * mean * mean) / (config.trials - 1);
    if (result.variance_a_share < 0.0) result.variance_a_share = 0.0;
  }
  return result;
}

double single_voter(double accuracy, const SignalSpec& signal,
                    StateOfWorld state, TieRule tie) {
  if (accuracy < 0.5 || accuracy > 1.0)
    throw std::invalid_argument("accuracy must lie in [0.5, 1]");
  // Degenerate one-voter population; the correct pick is A in theta_A.
  const PopulationProfile lone(0.0, accuracy, accuracy);
  const double share_a = exact_vote_share(lone, signal, state, tie);
  return state == StateOfWorld::kThetaA ? share_a : 1.0 - share_a;
}

double single_voter(const PopulationProfile& profile, const SignalSpec& signal,
                    StateOfWorld state, TieRule tie) {
  return profile.lambda() * single_voter(profile.q_low(), signal, state, tie) +
         (1.0 - profile.lambda()) *
             single_voter(profile.q_high(), signal, state, tie);
}

double condorcet_baseline(double accuracy, int n_voters, int trials,
                          std::uint64_t seed) {
  if (accuracy <= 0.5 || accuracy > 1.0)
    throw std::invalid_argument("baseline requires accuracy in (0.5, 1]");
  if (n_voters < 1) throw std::invalid_argument("n_voters must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");

  int correct_majorities = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 eng = trial_engine(seed, trial);
    int correct_votes = 0;  // votes for B, the better policy in theta_B
    for (int voter = 0; voter < n_voters; ++voter)
      if (uniform01(eng) < accuracy) ++correct_votes;
    const double share_a =
        static_cast<double>(n_voters - correct_votes) / n_voters;
    if (election_outcome(share_a, TieRule::kFavorA) == Alternative::kB)
      ++correct_majorities;
  }
  return static_cast<double>(correct_majorities) / trials;
}

}  // namespace persuasion

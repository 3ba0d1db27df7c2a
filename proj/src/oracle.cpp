#include "persuasion/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace persuasion {

namespace {

constexpr double kMergeTol = 1e-12;
constexpr double kPlausibilityTol = 1e-9;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

MultiSignal::MultiSignal(std::vector<double> posteriors,
                         std::vector<double> probs) {
  require(posteriors.size() == probs.size() && !posteriors.empty(),
          "posterior and probability lists must be nonempty and equal-sized");
  std::vector<std::size_t> order(posteriors.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return posteriors[a] > posteriors[b];
  });
  for (const std::size_t i : order) {
    require(posteriors[i] >= 0.0 && posteriors[i] <= 1.0,
            "posteriors must lie in [0, 1]");
    require(probs[i] >= 0.0, "realization probabilities must be nonnegative");
    if (probs[i] == 0.0) continue;
    if (!posteriors_.empty() &&
        posteriors_.back() - posteriors[i] <= kMergeTol) {
      probs_.back() += probs[i];  // merge equal posteriors
      continue;
    }
    posteriors_.push_back(posteriors[i]);
    probs_.push_back(probs[i]);
  }
  require(!probs_.empty(), "signal needs at least one positive-probability realization");
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  require(std::abs(total - 1.0) <= kPlausibilityTol,
          "realization probabilities must sum to 1");
  double mean = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i)
    mean += posteriors_[i] * probs_[i];
  require(std::abs(mean - 0.5) <= kPlausibilityTol,
          "posteriors must average to the prior 1/2 (Bayes plausibility)");
}

MultiSignal MultiSignal::from_binary(const SignalSpec& signal) {
  if (!signal.informative()) return MultiSignal({0.5}, {1.0});
  const double a = signal.alpha();
  const double b = signal.beta();
  const double p_a = (0.5 - b) / (a - b);
  return MultiSignal({a, b}, {p_a, 1.0 - p_a});
}

double MultiSignal::conditional_prob(std::size_t i, StateOfWorld state) const {
  const double post = posteriors_[i];
  return 2.0 * (state == StateOfWorld::kThetaA ? post : 1.0 - post) *
         probs_[i];
}

double multi_vote_share(const PopulationProfile& profile,
                        const MultiSignal& signal, StateOfWorld state,
                        TieRule tie) {
  double share = 0.0;
  for (std::size_t i = 0; i < signal.size(); ++i) {
    const double p_realization = signal.conditional_prob(i, state);
    if (p_realization == 0.0) continue;
    const double designer_post = signal.posteriors()[i];
    double inner = 0.0;
    const double classes[2][2] = {{profile.lambda(), profile.q_low()},
                                  {1.0 - profile.lambda(), profile.q_high()}};
    for (const auto& cls : classes) {
      const double weight = cls[0];
      const double q = cls[1];
      if (weight == 0.0) continue;
      for (const bool exo_pro_a : {true, false}) {
        const bool matches = exo_pro_a == (state == StateOfWorld::kThetaA);
        const double p_exo = matches ? q : 1.0 - q;
        if (p_exo == 0.0) continue;
        const double post =
            fused_posterior(exo_pro_a ? q : 1.0 - q, designer_post);
        if (sincere_vote(Belief(post), tie) == Alternative::kA)
          inner += weight * p_exo;
      }
    }
    share += p_realization * inner;
  }
  return share;
}

namespace {

void consider(const PopulationProfile& profile, const SignalSpec& signal,
              TieRule tie, GridReport& report) {
  const double share = exact_vote_share(profile, signal,
                                        StateOfWorld::kThetaB, tie);
  report.max_share = std::max(report.max_share, share);
  if (!at_least_half(share)) return;
  report.optimal_set.push_back({signal, share, bias(signal).value()});
}

}  // namespace

GridReport grid_search(const PopulationProfile& profile, double step,
                       TieRule tie) {
  require(step > 0.0 && step <= 0.01, "grid step must lie in (0, 0.01]");
  GridReport report;
  report.resolution = step;
  report.max_share = 0.0;
  report.uninformative_a_share_theta_b = exact_vote_share(
      profile, SignalSpec::uninformative(), StateOfWorld::kThetaB, tie);

  for (double alpha = 0.5 + step; alpha <= 1.0 + 1e-12; alpha += step) {
    const double a = std::min(alpha, 1.0);
    for (double beta = 0.0; beta < 0.5 - 1e-12; beta += step)
      consider(profile, SignalSpec::from_posteriors(a, beta), tie, report);
  }
  for (const CandidateSignal& c : candidate_signals(profile)) {
    const bool seen = std::any_of(
        report.optimal_set.begin(), report.optimal_set.end(),
        [&](const GridSignal& g) { return g.signal == c.signal; });
    if (!seen) consider(profile, c.signal, tie, report);
  }

  std::sort(report.optimal_set.begin(), report.optimal_set.end(),
            [](const GridSignal& x, const GridSignal& y) {
              if (x.signal.alpha() != y.signal.alpha())
                return x.signal.alpha() < y.signal.alpha();
              return x.signal.beta() < y.signal.beta();
            });
  report.optimal_set.erase(
      std::unique(report.optimal_set.begin(), report.optimal_set.end(),
                  [](const GridSignal& x, const GridSignal& y) {
                    return x.signal == y.signal;
                  }),
      report.optimal_set.end());

  if (!report.optimal_set.empty()) {
    auto [lo, hi] = std::minmax_element(
        report.optimal_set.begin(), report.optimal_set.end(),
        [](const GridSignal& x, const GridSignal& y) { return x.bias < y.bias; });
    report.bias_range = {lo->bias, hi->bias};
  }

  if (at_least_half(report.uninformative_a_share_theta_b))
    report.classification = Manipulability::kAlwaysA;
  else if (!report.optimal_set.empty())
    report.classification = Manipulability::kManipulable;
  else
    report.classification = Manipulability::kNotManipulable;
  return report;
}

namespace {

std::string signal_str(const SignalSpec& s) {
  std::ostringstream os;
  os << "(" << s.alpha() << ", " << s.beta() << ")";
  return os.str();
}

}  // namespace

Lemma1Report verify_lemma1(const PopulationProfile& profile, double step) {
  const GridReport grid = grid_search(profile, step);
  const std::vector<CandidateSignal> candidates = candidate_signals(profile);
  const bool uninformative_optimal =
      at_least_half(grid.uninformative_a_share_theta_b);

  // Rounding value sets. An accuracy of exactly 1/2 is kept in the alpha set:
  // alpha = 1/2 pins the pro-A realization to probability 1, i.e. rounding
  // lands on the uninformative signal.
  std::vector<double> alpha_set;
  std::vector<double> beta_set = {0.0};
  const auto add_accuracy = [&](double q) {
    alpha_set.push_back(q);
    if (1.0 - q < 0.5) beta_set.push_back(1.0 - q);
  };
  if (profile.homogeneous()) {
    add_accuracy(profile.homogeneous_accuracy());
  } else {
    add_accuracy(profile.q_high());
    add_accuracy(profile.q_low());
  }

  const auto round_down = [](const std::vector<double>& set, double value) {
    std::optional<double> best;
    for (const double v : set)
      if (v <= value + kPosteriorTieTol && (!best || v > *best)) best = v;
    return best;
  };
  const auto is_optimal_signal = [&](double alpha, double beta) {
    if (alpha <= 0.5) return uninformative_optimal;
    const SignalSpec rounded = SignalSpec::from_posteriors(alpha, beta);
    return at_least_half(
        exact_vote_share(profile, rounded, StateOfWorld::kThetaB));
  };

  Lemma1Report report;
  report.verified = true;

  bool candidate_optimal = false;
  for (const CandidateSignal& c : candidates)
    candidate_optimal = candidate_optimal || c.optimal;

  // Existence closure. Candidates are injected into the grid, so a grid
  // optimum must exist whenever a candidate works; conversely a grid optimum
  // implies an optimal candidate unless it rounds to the uninformative signal
  // (only possible on AlwaysA profiles).
  if (candidate_optimal && grid.optimal_set.empty()) {
    report.verified = false;
    report.discrepancies.push_back(
        "an optimal candidate exists but the grid found no optimal signal");
  }
  if (!grid.optimal_set.empty() && !candidate_optimal &&
      !uninformative_optimal) {
    report.verified = false;
    report.discrepancies.push_back(
        "grid-optimal signals exist but no candidate is optimal");
  }

  // Pointwise closure: each grid optimum stays optimal after rounding down.
  for (const GridSignal& g : grid.optimal_set) {
    const auto alpha = round_down(alpha_set, g.signal.alpha());
    const auto beta = round_down(beta_set, g.signal.beta());
    if (!alpha || !beta) {
      report.verified = false;
      report.discrepancies.push_back("optimal signal " + signal_str(g.signal) +
                                     " has no candidate below it");
      continue;
    }
    if (!is_optimal_signal(*alpha, *beta)) {
      report.verified = false;
      report.discrepancies.push_back("rounding optimal signal " +
                                     signal_str(g.signal) +
                                     " loses optimality");
    }
  }
  return report;
}

Decomposition decompose(const MultiSignal& signal) {
  if (!signal.informative()) {
    // Single-realization signal: both parts are the signal itself.
    return {0.5, signal, signal};
  }
  require(signal.size() > 2, "decompose requires more than two realizations");

  const std::vector<double>& post = signal.posteriors();
  const std::vector<double>& prob = signal.probs();
  const std::size_t n = signal.size();
  const double a1 = post.front();
  const double an = post.back();
  const double p1 = prob.front();
  const double pn = prob.back();

  // Binary part on the extreme posteriors.
  const double pa = (0.5 - an) / (a1 - an);
  const double pb = (a1 - 0.5) / (a1 - an);
  const MultiSignal s1({a1, an}, {pa, pb});

  const double lhs = pa * pn;  // compare pa/pb with p1/pn cross-multiplied
  const double rhs = pb * p1;

  double eta;
  std::vector<double> keep_post;
  std::vector<double> keep_prob;
  if (std::abs(lhs - rhs) <= 1e-15) {
    // The binary part consumes r_1 and r_n exactly.
    eta = p1 + pn;
    keep_post.assign(post.begin() + 1, post.end() - 1);
    for (std::size_t i = 1; i + 1 < n; ++i)
      keep_prob.push_back(prob[i] / (1.0 - eta));
  } else if (lhs < rhs) {
    // r_n is consumed; a residual of r_1 stays in s2. The residual is
    // positive in exact arithmetic; clamp rounding noise near the equal case.
    eta = pn / pb;
    keep_post.assign(post.begin(), post.end() - 1);
    keep_prob.push_back(std::max(0.0, (p1 - eta * pa) / (1.0 - eta)));
    for (std::size_t i = 1; i + 1 < n; ++i)
      keep_prob.push_back(prob[i] / (1.0 - eta));
  } else {
    // r_1 is consumed; a residual of r_n stays in s2.
    eta = p1 / pa;
    keep_post.assign(post.begin() + 1, post.end());
    for (std::size_t i = 1; i + 1 < n; ++i)
      keep_prob.push_back(prob[i] / (1.0 - eta));
    keep_prob.push_back(std::max(0.0, (pn - eta * pb) / (1.0 - eta)));
  }
  return {eta, s1, MultiSignal(std::move(keep_post), std::move(keep_prob))};
}

SignalSpec reduce_to_binary(const MultiSignal& signal,
                            const PopulationProfile& profile, TieRule tie) {
  MultiSignal current = signal;
  while (current.size() > 2) {
    Decomposition d = decompose(current);
    const double share1 =
        multi_vote_share(profile, d.s1, StateOfWorld::kThetaB, tie);
    const double share2 =
        multi_vote_share(profile, d.s2, StateOfWorld::kThetaB, tie);
    current = share1 >= share2 ? std::move(d.s1) : std::move(d.s2);
  }
  if (!current.informative()) return SignalSpec::uninformative();
  return SignalSpec::from_posteriors(current.posteriors()[0],
                                     current.posteriors()[1]);
}

}  // namespace persuasion

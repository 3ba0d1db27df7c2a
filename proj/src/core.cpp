#include "persuasion/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace persuasion {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

bool at_least_half(double share) { return share >= 0.5 - kShareTol; }

SignalSpec SignalSpec::uninformative() { return SignalSpec(0.5, 0.5, false); }

SignalSpec SignalSpec::from_posteriors(double alpha, double beta) {
  if (alpha == 0.5 && beta == 0.5) return uninformative();
  require(alpha > beta, "signal requires alpha > beta (got alpha <= beta)");
  require(beta >= 0.0 && beta < 0.5, "signal beta must lie in [0, 1/2)");
  require(alpha > 0.5 && alpha <= 1.0, "signal alpha must lie in (1/2, 1]");
  return SignalSpec(alpha, beta, true);
}

SignalSpec SignalSpec::from_conditionals(double a_given_theta_a,
                                         double a_given_theta_b) {
  require(a_given_theta_a >= 0.0 && a_given_theta_a <= 1.0,
          "conditional P(pro-A | theta_A) must lie in [0, 1]");
  require(a_given_theta_b >= 0.0 && a_given_theta_b <= 1.0,
          "conditional P(pro-A | theta_B) must lie in [0, 1]");
  double pa = a_given_theta_a;
  double pb = a_given_theta_b;
  if (pa == pb) return uninformative();
  if (pa < pb) {
    // Relabel the realizations so the pro-A one is the likelier under theta_A.
    pa = 1.0 - a_given_theta_a;
    pb = 1.0 - a_given_theta_b;
  }
  // Bayes at the uniform prior, realization by realization.
  const double alpha = pa / (pa + pb);
  const double na = 1.0 - pa;
  const double nb = 1.0 - pb;
  const double beta = (na + nb) > 0.0 ? na / (na + nb) : 0.0;
  return from_posteriors(alpha, beta);
}

SignalConditionals posteriors_to_conditionals(const SignalSpec& signal) {
  if (!signal.informative()) return {1.0, 1.0};  // constant pro-A convention
  const double a = signal.alpha();
  const double b = signal.beta();
  const double d = a - b;
  SignalConditionals out;
  out.a_given_theta_a = clamp01((a - 2.0 * a * b) / d);
  out.a_given_theta_b = clamp01((1.0 - 2.0 * b - a + 2.0 * a * b) / d);
  return out;
}

SignalSpec conditionals_to_posteriors(double a_given_theta_a,
                                      double a_given_theta_b) {
  return SignalSpec::from_conditionals(a_given_theta_a, a_given_theta_b);
}

std::optional<double> bias(const SignalSpec& signal) {
  if (!signal.informative()) return std::nullopt;
  return (1.0 - signal.beta() - signal.alpha()) /
         (signal.alpha() - signal.beta());
}

Belief::Belief(double p_theta_a) : p_(p_theta_a) {
  require(p_ >= 0.0 && p_ <= 1.0, "belief must lie in [0, 1]");
}

Belief update_belief(Belief prior, double likelihood_ratio) {
  const double p = prior.p();
  require(likelihood_ratio >= 0.0 && !std::isnan(likelihood_ratio),
          "likelihood ratio must lie in [0, +inf]");
  if (std::isinf(likelihood_ratio)) {
    if (p == 0.0)
      throw std::domain_error(
          "contradictory evidence: prior 0 with infinite likelihood ratio");
    return Belief(1.0);
  }
  if (likelihood_ratio == 0.0) {
    if (p == 1.0)
      throw std::domain_error(
          "contradictory evidence: prior 1 with zero likelihood ratio");
    return Belief(0.0);
  }
  if (p == 0.0 || p == 1.0) return prior;  // endpoints absorb finite ratios
  const double num = p * likelihood_ratio;
  return Belief(num / (num + (1.0 - p)));
}

Alternative sincere_vote(Belief posterior, TieRule tie) {
  const double p = posterior.p();
  if (std::abs(p - 0.5) <= kPosteriorTieTol)
    return tie == TieRule::kFavorA ? Alternative::kA : Alternative::kB;
  return p > 0.5 ? Alternative::kA : Alternative::kB;
}

double fused_posterior(double exo_posterior, double designer_posterior) {
  const double num = exo_posterior * designer_posterior;
  const double den =
      num + (1.0 - exo_posterior) * (1.0 - designer_posterior);
  return num / den;
}

PopulationProfile::PopulationProfile(double lambda, double q_low,
                                     double q_high)
    : lambda_(lambda), q_low_(q_low), q_high_(q_high) {
  require(lambda_ >= 0.0 && lambda_ <= 1.0, "lambda must lie in [0, 1]");
  require(q_low_ >= 0.5, "q_low below 0.5");
  require(q_low_ <= q_high_, "q_low must not exceed q_high");
  require(q_high_ <= 1.0, "q_high above 1");
}

bool PopulationProfile::homogeneous() const {
  return q_low_ == q_high_ || lambda_ == 0.0 || lambda_ == 1.0;
}

double PopulationProfile::homogeneous_accuracy() const {
  if (q_low_ == q_high_) return q_high_;
  if (lambda_ == 0.0) return q_high_;
  if (lambda_ == 1.0) return q_low_;
  throw std::logic_error("profile is heterogeneous");
}

namespace {

// Shared cell walk. Calls f(class_weight, accuracy, exo_pro_a, designer_pro_a,
// probability, posterior) for every positive-probability cell.
template <typename F>
void for_each_cell(const PopulationProfile& profile, const SignalSpec& signal,
                   StateOfWorld state, F&& f) {
  const SignalConditionals cond = posteriors_to_conditionals(signal);
  const double pro_a_prob = state == StateOfWorld::kThetaA
                                ? cond.a_given_theta_a
                                : cond.a_given_theta_b;
  const double post_pro_a = signal.informative() ? signal.alpha() : 0.5;
  const double post_pro_b = signal.informative() ? signal.beta() : 0.5;

  const double classes[2][2] = {{profile.lambda(), profile.q_low()},
                                {1.0 - profile.lambda(), profile.q_high()}};
  for (const auto& cls : classes) {
    const double weight = cls[0];
    const double q = cls[1];
    if (weight == 0.0) continue;
    for (const bool exo_pro_a : {true, false}) {
      // The exogenous realization matches the state with probability q.
      const bool matches = exo_pro_a == (state == StateOfWorld::kThetaA);
      const double p_exo = matches ? q : 1.0 - q;
      const double exo_post = exo_pro_a ? q : 1.0 - q;
      for (const bool designer_pro_a : {true, false}) {
        const double p_des = designer_pro_a ? pro_a_prob : 1.0 - pro_a_prob;
        const double probability = weight * p_exo * p_des;
        if (probability == 0.0) continue;
        const double post = fused_posterior(
            exo_post, designer_pro_a ? post_pro_a : post_pro_b);
        f(weight, q, exo_pro_a, designer_pro_a, probability, post);
      }
    }
  }
}

}  // namespace

std::vector<VoterCell> voter_cells(const PopulationProfile& profile,
                                   const SignalSpec& signal, StateOfWorld state,
                                   TieRule tie) {
  std::vector<VoterCell> cells;
  cells.reserve(8);
  for_each_cell(profile, signal, state,
                [&](double weight, double q, bool exo, bool des, double prob,
                    double post) {
                  cells.push_back({weight, q, exo, des, prob, post,
                                   sincere_vote(Belief(post), tie)});
                });
  return cells;
}

double exact_vote_share(const PopulationProfile& profile,
                        const SignalSpec& signal, StateOfWorld state,
                        TieRule tie) {
  double share = 0.0;
  for_each_cell(profile, signal, state,
                [&](double, double, bool, bool, double prob, double post) {
                  if (sincere_vote(Belief(post), tie) == Alternative::kA)
                    share += prob;
                });
  return share;
}

Alternative election_outcome(double share_a, TieRule tie) {
  if (std::abs(share_a - 0.5) <= kPosteriorTieTol)
    return tie == TieRule::kFavorA ? Alternative::kA : Alternative::kB;
  return share_a > 0.5 ? Alternative::kA : Alternative::kB;
}

}  // namespace persuasion

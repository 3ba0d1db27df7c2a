#pragma once
// Exact probability algebra for binary-state elections with a designer signal:
// posterior/conditional conversions, bias, Bayes updating, sincere voting, and
// closed-form (continuum) vote shares.
//
// Conventions, used throughout the library:
//  - Two equally likely states theta_A / theta_B; the prior is always 1/2.
//  - A designer signal is identified with the pair of posteriors (alpha, beta)
//    it induces on theta_A after its two realizations ("pro-A" and "pro-B"),
//    with 0 <= beta < 1/2 < alpha <= 1 for informative signals.
//  - Ties (posterior exactly 1/2, vote share exactly 1/2) are resolved by a
//    TieRule; FavorA is the model default and is load-bearing: the candidate
//    signals of the analysis module sit exactly on voter indifference.

#include <optional>
#include <vector>

namespace persuasion {

enum class StateOfWorld { kThetaA, kThetaB };
enum class Alternative { kA, kB };
enum class TieRule { kFavorA, kFavorB };

// Posterior-vs-1/2 comparisons treat |p - 1/2| <= kPosteriorTieTol as a tie.
inline constexpr double kPosteriorTieTol = 1e-12;
// Vote-share and threshold comparisons against 1/2 use this looser tolerance.
inline constexpr double kShareTol = 1e-9;

// share >= 1/2 up to kShareTol (A-favorable reading of the majority rule).
bool at_least_half(double share);

// Designer signal as the posterior pair it induces from the uniform prior.
// The uninformative signal is represented explicitly (alpha = beta = 1/2)
// rather than as a limit: the alpha - beta denominators of the conversion
// formulas are singular there.
class SignalSpec {
 public:
  static SignalSpec uninformative();
  // Requires 0 <= beta < 1/2 < alpha <= 1, except alpha = beta = 1/2 which
  // yields the uninformative signal. Throws std::invalid_argument otherwise.
  static SignalSpec from_posteriors(double alpha, double beta);
  // Builds the signal from P(pro-A | theta_A) and P(pro-A | theta_B).
  // Equal inputs yield the uninformative signal; if the pair is oriented the
  // wrong way the realization labels are swapped (without loss of generality).
  static SignalSpec from_conditionals(double a_given_theta_a,
                                      double a_given_theta_b);

  bool informative() const { return informative_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }

  bool operator==(const SignalSpec&) const = default;

 private:
  SignalSpec(double alpha, double beta, bool informative)
      : alpha_(alpha), beta_(beta), informative_(informative) {}

  double alpha_;
  double beta_;
  bool informative_;
};

struct SignalConditionals {
  double a_given_theta_a;  // P(pro-A realization | theta_A)
  double a_given_theta_b;  // P(pro-A realization | theta_B)
};

// P(pro-A | theta_A) = (a - 2ab)/(a - b), P(pro-A | theta_B) = (1 - 2b - a + 2ab)/(a - b).
// The uninformative signal maps to (1, 1): the constant pro-A realization,
// which keeps two-stage sampling well defined.
SignalConditionals posteriors_to_conditionals(const SignalSpec& signal);

// Inverse of posteriors_to_conditionals (alias of SignalSpec::from_conditionals).
SignalSpec conditionals_to_posteriors(double a_given_theta_a,
                                      double a_given_theta_b);

// bias = P(s(theta_B) = pro-A) - P(s(theta_A) = pro-B) = (1 - beta - alpha)/(alpha - beta),
// the uniform-prior form. (The general-prior weighted form is never needed
// here; non-uniform priors are rejected at construction across the library.)
// Undefined for the uninformative signal.
std::optional<double> bias(const SignalSpec& signal);

// A belief is the probability assigned to theta_A.
class Belief {
 public:
  explicit Belief(double p_theta_a);  // throws unless in [0, 1]
  double p() const { return p_; }

 private:
  double p_;
};

// Posterior odds = prior odds * likelihood_ratio, where likelihood_ratio =
// P(obs | theta_A) / P(obs | theta_B) in [0, +inf]. Endpoint priors absorb
// finite ratios; contradictory evidence (prior 1 with ratio 0, prior 0 with
// ratio +inf) throws std::domain_error.
Belief update_belief(Belief prior, double likelihood_ratio);

// Vote A iff the posterior on theta_A is above 1/2; exact ties follow the tie rule.
Alternative sincere_vote(Belief posterior, TieRule tie = TieRule::kFavorA);

// Combines two independent-given-the-state posteriors (each from prior 1/2).
// Callers must not pass the contradictory pair {0, 1}; such voter cells have
// probability zero and are skipped before fusing.
double fused_posterior(double exo_posterior, double designer_posterior);

// Population split between a low-accuracy and a high-accuracy class.
class PopulationProfile {
 public:
  // Requires 0 <= lambda <= 1 and 0.5 <= q_low <= q_high <= 1.
  PopulationProfile(double lambda, double q_low, double q_high);

  double lambda() const { return lambda_; }
  double q_low() const { return q_low_; }
  double q_high() const { return q_high_; }

  // Single effective accuracy class: q_low == q_high or lambda in {0, 1}.
  bool homogeneous() const;
  double homogeneous_accuracy() const;  // throws if not homogeneous

 private:
  double lambda_;
  double q_low_;
  double q_high_;
};

// One (accuracy class, exogenous realization, designer realization) cell of
// the continuum population, with its conditional probability and vote.
struct VoterCell {
  double class_weight;   // lambda or 1 - lambda
  double accuracy;
  bool exo_pro_a;        // exogenous realization supports A
  bool designer_pro_a;   // designer realization is the pro-A one
  double probability;    // class_weight * P(cell | state); zero cells omitted
  double posterior;      // fused posterior on theta_A
  Alternative vote;
};

// The at-most-eight positive-probability cells for the given state.
std::vector<VoterCell> voter_cells(const PopulationProfile& profile,
                                   const SignalSpec& signal, StateOfWorld state,
                                   TieRule tie = TieRule::kFavorA);

// Share of A votes in the continuum population: the exhaustive expectation
// over voter cells. Deterministic and exact (no sampling).
double exact_vote_share(const PopulationProfile& profile,
                        const SignalSpec& signal, StateOfWorld state,
                        TieRule tie = TieRule::kFavorA);

// Majority winner given the A-vote share; share-1/2 ties follow the tie rule.
Alternative election_outcome(double share_a, TieRule tie = TieRule::kFavorA);

}  // namespace persuasion

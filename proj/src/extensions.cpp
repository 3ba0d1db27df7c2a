#include "persuasion/extensions.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace persuasion {

namespace {

constexpr double kSqrt2Over2 = 0.70710678118654752;
constexpr double kTwoThirds = 2.0 / 3.0;
constexpr double kGolden = 0.61803398874989485;  // (sqrt(5) - 1) / 2
constexpr double kDegenerateTol = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Best per-class A-share in theta_B under a targeted signal.
double best_class_share(double q) {
  return std::max((1.0 - q) / q, 1.0 - q * q);
}

}  // namespace

const char* to_string(ContinuousClass c) {
  switch (c) {
    case ContinuousClass::kManipulable: return "Manipulable";
    case ContinuousClass::kNotManipulable: return "NotManipulable";
    case ContinuousClass::kUndetermined: return "Undetermined";
  }
  return "?";
}

ContinuousProfile ContinuousProfile::from_parts(
    std::vector<DensitySegment> segments, std::vector<MassAtom> atoms) {
  ContinuousProfile p;
  double mass = 0.0;
  std::sort(segments.begin(), segments.end(),
            [](const DensitySegment& a, const DensitySegment& b) {
              return a.lo < b.lo;
            });
  for (const DensitySegment& s : segments) {
    require(s.lo >= 0.5 && s.hi <= 1.0 + kDegenerateTol && s.lo < s.hi,
            "density segments must satisfy 0.5 <= lo < hi <= 1");
    require(s.value >= 0.0, "density values must be nonnegative");
    mass += s.value * (s.hi - s.lo);
  }
  for (std::size_t i = 1; i < segments.size(); ++i)
    require(segments[i].lo >= segments[i - 1].hi - kDegenerateTol,
            "density segments must not overlap");
  for (const MassAtom& a : atoms) {
    require(a.accuracy >= 0.5 && a.accuracy <= 1.0,
            "atom accuracies must lie in [0.5, 1]");
    require(a.mass >= 0.0, "atom masses must be nonnegative");
    mass += a.mass;
  }
  if (std::abs(mass - 1.0) > kShareTol) {
    std::ostringstream os;
    os << "density must integrate to 1; got " << mass;
    throw std::invalid_argument(os.str());
  }
  p.segments_ = std::move(segments);
  p.atoms_ = std::move(atoms);
  p.total_mass_ = mass;
  return p;
}

ContinuousProfile ContinuousProfile::from_breakpoint_table(std::istream& in) {
  std::string line;
  bool header_seen = false;
  std::vector<double> breakpoints;
  std::vector<double> values;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    if (!header_seen) {
      std::string b, v;
      require(bool(row >> b >> v) && b == "breakpoint" && v == "value",
              "profile table must start with the header 'breakpoint value'");
      header_seen = true;
      continue;
    }
    double b, v;
    if (!(row >> b)) continue;  // blank line
    require(bool(row >> v), "profile rows need two decimal numbers");
    require(breakpoints.empty() || b > breakpoints.back(),
            "breakpoints must be strictly increasing");
    breakpoints.push_back(b);
    values.push_back(v);
  }
  require(header_seen && !breakpoints.empty(),
          "profile table has no data rows");
  require(breakpoints.back() <= 1.0, "last breakpoint must be <= 1.0");
  std::vector<DensitySegment> segments;
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const double hi = i + 1 < breakpoints.size() ? breakpoints[i + 1] : 1.0;
    if (hi > breakpoints[i])
      segments.push_back({breakpoints[i], hi, values[i]});
  }
  return from_parts(std::move(segments));
}

ContinuousProfile ContinuousProfile::two_atom(const PopulationProfile& p) {
  std::vector<MassAtom> atoms;
  if (p.homogeneous()) {
    atoms.push_back({p.homogeneous_accuracy(), 1.0});
  } else {
    atoms.push_back({p.q_low(), p.lambda()});
    atoms.push_back({p.q_high(), 1.0 - p.lambda()});
  }
  return from_parts({}, std::move(atoms));
}

std::pair<double, double> ContinuousProfile::support() const {
  double lo = 1.0, hi = 0.5;
  for (const DensitySegment& s : segments_) {
    if (s.value <= 0.0) continue;
    lo = std::min(lo, s.lo);
    hi = std::max(hi, s.hi);
  }
  for (const MassAtom& a : atoms_) {
    if (a.mass <= 0.0) continue;
    lo = std::min(lo, a.accuracy);
    hi = std::max(hi, a.accuracy);
  }
  if (lo > hi) throw std::logic_error("profile carries no mass");
  return {lo, std::min(hi, 1.0)};
}

namespace {

// Integrates a function given by closed-form antiderivative over the density
// part and by pointwise evaluation at the atoms.
template <typename Antiderivative, typename Pointwise>
double integrate(const ContinuousProfile& profile, Antiderivative F,
                 Pointwise g) {
  double total = 0.0;
  for (const DensitySegment& s : profile.segments())
    if (s.value > 0.0) total += s.value * (F(s.hi) - F(s.lo));
  for (const MassAtom& a : profile.atoms())
    if (a.mass > 0.0) total += a.mass * g(a.accuracy);
  return total;
}

// Splits [lo, hi] at the interior points of `cuts` and sums piece integrals.
template <typename PieceIntegral>
double split_integral(double lo, double hi, std::vector<double> cuts,
                      PieceIntegral piece) {
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  double x = lo;
  for (const double c : cuts) {
    if (c <= x) continue;
    if (c > hi) break;
    total += piece(x, c);
    x = c;
  }
  if (x < hi) total += piece(x, hi);
  return total;
}

double a_prob_theta_b(double q, const SignalSpec& signal) {
  return exact_vote_share(PopulationProfile(0.0, q, q), signal,
                          StateOfWorld::kThetaB);
}

}  // namespace

double continuous_share_theta_b(const ContinuousProfile& profile,
                                const SignalSpec& signal) {
  if (!signal.informative()) {
    // Constant pro-A realization: accuracy-1/2 voters tie (vote A), the rest
    // follow their exogenous signal.
    return integrate(
        profile, [](double q) { return q - q * q / 2.0; },
        [&](double q) { return a_prob_theta_b(q, signal); });
  }
  const double pa = posteriors_to_conditionals(signal).a_given_theta_b;
  const double pb = 1.0 - pa;
  const double alpha = signal.alpha();
  const double t_flip = 1.0 - signal.beta();  // pro-A voters resist pro-B news

  double total = 0.0;
  for (const DensitySegment& s : profile.segments()) {
    if (s.value <= 0.0) continue;
    total += s.value *
             split_integral(s.lo, s.hi, {alpha, t_flip}, [&](double x, double y) {
               // Indicators are constant inside each piece.
               const double mid = 0.5 * (x + y);
               const double pro_b_voter_coeff = mid <= alpha ? pa : 0.0;
               const double pro_a_voter_coeff =
                   pa + (mid >= t_flip ? pb : 0.0);
               const double int_one_minus_q =
                   (y - x) - (y * y - x * x) / 2.0;
               const double int_q = (y * y - x * x) / 2.0;
               return pro_a_voter_coeff * int_one_minus_q +
                      pro_b_voter_coeff * int_q;
             });
  }
  for (const MassAtom& a : profile.atoms())
    if (a.mass > 0.0) total += a.mass * a_prob_theta_b(a.accuracy, signal);
  return total;
}

ContinuousReport continuous_classify(const ContinuousProfile& profile,
                                     double step) {
  require(step > 0.0 && step <= 0.01, "grid step must lie in (0, 0.01]");
  const auto [inf, sup] = profile.support();
  ContinuousReport report;

  if (inf >= kSqrt2Over2 - kDegenerateTol) {
    report.analytic = ContinuousClass::kNotManipulable;
    report.manipulable = false;
    report.method = "analytic";
    return report;
  }
  if (sup <= kTwoThirds + kDegenerateTol) {
    report.analytic = ContinuousClass::kManipulable;
    report.manipulable = true;
    report.method = "analytic";
    // Witness from the sufficiency proof; a supremum of 1/2 degenerates to
    // the uninformative signal (everyone is uninformed and ties toward A).
    report.best_signal = sup > 0.5 + kDegenerateTol
                             ? SignalSpec::from_posteriors(sup, 0.0)
                             : SignalSpec::uninformative();
    report.max_a_share_theta_b =
        continuous_share_theta_b(profile, *report.best_signal);
    return report;
  }

  report.analytic = ContinuousClass::kUndetermined;
  report.method = "numeric";
  std::vector<double> alphas;
  std::vector<double> betas = {0.0};
  const auto add_threshold = [&](double q) {
    if (q > 0.5 + kDegenerateTol && q <= 1.0) alphas.push_back(q);
    if (q < 1.0 && 1.0 - q < 0.5) betas.push_back(1.0 - q);
  };
  for (double a = 0.5 + step; a <= 1.0 + 1e-12; a += step)
    alphas.push_back(std::min(a, 1.0));
  for (double b = step; b < 0.5 - 1e-12; b += step) betas.push_back(b);
  for (const DensitySegment& s : profile.segments()) {
    add_threshold(s.lo);
    add_threshold(s.hi);
  }
  for (const MassAtom& a : profile.atoms()) add_threshold(a.accuracy);

  double best = 0.0;
  std::optional<SignalSpec> best_signal;
  for (const double a : alphas)
    for (const double b : betas) {
      const SignalSpec signal = SignalSpec::from_posteriors(a, b);
      const double share = continuous_share_theta_b(profile, signal);
      if (!best_signal || share > best) {
        best = share;
        best_signal = signal;
      }
    }
  report.max_a_share_theta_b = best;
  report.best_signal = best_signal;
  report.manipulable = at_least_half(best);
  return report;
}

namespace {

ClassSignalPlan make_plan(double q, double weight) {
  ClassSignalPlan plan;
  plan.accuracy = q;
  plan.weight = weight;
  plan.a_share_theta_b = best_class_share(q);
  plan.at_crossover = std::abs(q - kGolden) <= kDegenerateTol;
  if (q <= 0.5 + kDegenerateTol) {
    // Uninformed class: telling them nothing makes them all tie toward A.
    plan.signal = SignalSpec::uninformative();
  } else if (q <= kGolden) {
    plan.signal = SignalSpec::from_posteriors(q, 0.0);
  } else {
    plan.signal = SignalSpec::from_posteriors(q, 1.0 - q);
  }
  return plan;
}

}  // namespace

TargetedReport targeted_classify(const PopulationProfile& profile) {
  TargetedReport report;
  if (profile.homogeneous()) {
    report.plans.push_back(make_plan(profile.homogeneous_accuracy(), 1.0));
  } else {
    report.plans.push_back(make_plan(profile.q_low(), profile.lambda()));
    report.plans.push_back(make_plan(profile.q_high(), 1.0 - profile.lambda()));
  }
  report.lhs = 0.0;
  for (const ClassSignalPlan& p : report.plans)
    report.lhs += p.weight * p.a_share_theta_b;
  report.manipulable = at_least_half(report.lhs);
  return report;
}

TargetedReport targeted_classify(const ContinuousProfile& profile) {
  TargetedReport report;
  // max{(1-q)/q, 1-q^2} switches branch at the golden-ratio point.
  const auto antiderivative = [](double q) {
    const double at_golden = std::log(kGolden) - kGolden;
    if (q <= kGolden) return std::log(q) - q;
    return at_golden + (q - q * q * q / 3.0) -
           (kGolden - kGolden * kGolden * kGolden / 3.0);
  };
  report.lhs = integrate(profile, antiderivative, best_class_share);
  report.manipulable = at_least_half(report.lhs);
  for (const MassAtom& a : profile.atoms())
    if (a.mass > 0.0) report.plans.push_back(make_plan(a.accuracy, a.mass));
  return report;
}

StronglyTargetedReport strongly_targeted_classify(
    const PopulationProfile& profile) {
  const double lhs =
      2.0 * (profile.lambda() * (1.0 - profile.q_low()) +
             (1.0 - profile.lambda()) * (1.0 - profile.q_high()));
  return {at_least_half(lhs), lhs};
}

StronglyTargetedReport strongly_targeted_classify(
    const ContinuousProfile& profile) {
  const double lhs = integrate(
      profile, [](double q) { return 2.0 * q - q * q; },
      [](double q) { return 2.0 * (1.0 - q); });
  return {at_least_half(lhs), lhs};
}

namespace {

// Majority winner when every voter observes the same realization posterior.
Alternative public_winner(const PopulationProfile& profile, StateOfWorld state,
                          double realization_posterior) {
  double share = 0.0;
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
          fused_posterior(exo_pro_a ? q : 1.0 - q, realization_posterior);
      if (sincere_vote(Belief(post)) == Alternative::kA)
        share += weight * p_exo;
    }
  }
  return election_outcome(share);
}

struct PublicOutcome {
  double p_a_theta_a;
  double p_a_theta_b;
};

PublicOutcome public_outcome(const PopulationProfile& profile,
                             const SignalSpec& signal) {
  const SignalConditionals cond = posteriors_to_conditionals(signal);
  const double post_pro_a = signal.informative() ? signal.alpha() : 0.5;
  const double post_pro_b = signal.informative() ? signal.beta() : 0.5;
  PublicOutcome out{0.0, 0.0};
  for (const StateOfWorld state :
       {StateOfWorld::kThetaA, StateOfWorld::kThetaB}) {
    const double p_pro_a = state == StateOfWorld::kThetaA
                               ? cond.a_given_theta_a
                               : cond.a_given_theta_b;
    double p_a = 0.0;
    if (p_pro_a > 0.0 &&
        public_winner(profile, state, post_pro_a) == Alternative::kA)
      p_a += p_pro_a;
    if (p_pro_a < 1.0 &&
        public_winner(profile, state, post_pro_b) == Alternative::kA)
      p_a += 1.0 - p_pro_a;
    (state == StateOfWorld::kThetaA ? out.p_a_theta_a : out.p_a_theta_b) = p_a;
  }
  return out;
}

}  // namespace

PublicCompareReport public_persuasion_compare(const PopulationProfile& profile,
                                              double step) {
  require(step > 0.0 && step <= 0.01, "grid step must lie in (0, 0.01]");
  PublicCompareReport report;
  report.private_classification = classify(profile).classification;

  std::vector<double> alphas;
  std::vector<double> betas = {0.0};
  for (double a = 0.5 + step; a <= 1.0 + 1e-12; a += step)
    alphas.push_back(std::min(a, 1.0));
  for (double b = step; b < 0.5 - 1e-12; b += step) betas.push_back(b);
  for (const double q : {profile.q_low(), profile.q_high()}) {
    if (q > 0.5 + kDegenerateTol) alphas.push_back(q);
    if (1.0 - q < 0.5) betas.push_back(1.0 - q);
  }

  SignalSpec best = SignalSpec::uninformative();
  PublicOutcome best_outcome = public_outcome(profile, best);
  const auto objective = [](const PublicOutcome& o) {
    return 0.5 * (o.p_a_theta_a + o.p_a_theta_b);
  };
  for (const double a : alphas)
    for (const double b : betas) {
      const SignalSpec signal = SignalSpec::from_posteriors(a, b);
      const PublicOutcome outcome = public_outcome(profile, signal);
      const double gain = objective(outcome) - objective(best_outcome);
      const bool better =
          gain > kShareTol ||
          (gain > -kShareTol &&
           outcome.p_a_theta_b > best_outcome.p_a_theta_b + kShareTol);
      if (better) {
        best = signal;
        best_outcome = outcome;
      }
    }

  report.best_public_signal = best;
  report.public_p_a_theta_a = best_outcome.p_a_theta_a;
  report.public_p_a_theta_b = best_outcome.p_a_theta_b;
  switch (report.private_classification) {
    case Manipulability::kManipulable:
      report.preferred_medium = "private";
      break;
    case Manipulability::kAlwaysA:
      report.preferred_medium = "either";
      break;
    case Manipulability::kNotManipulable:
      // Private persuasion yields nothing in theta_B here; public wins iff it
      // secures any positive chance of A.
      report.preferred_medium =
          best_outcome.p_a_theta_b > 0.0 ? "public" : "either";
      break;
  }
  return report;
}

}  // namespace persuasion

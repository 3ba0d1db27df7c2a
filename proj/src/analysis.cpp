#include "persuasion/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace persuasion {

namespace {

constexpr double kSqrt2Over2 = 0.70710678118654752;
constexpr double kTwoThirds = 2.0 / 3.0;
constexpr double kDegenerateTol = 1e-12;

// Effective composition: lambda in {0, 1} and q_low == q_high all reduce to a
// single accuracy class, with lambda normalized to 0.
struct EffectiveProfile {
  double lambda;
  double q_low;
  double q_high;
  bool homogeneous;
};

EffectiveProfile effective(const PopulationProfile& p) {
  if (p.homogeneous()) {
    const double q = p.homogeneous_accuracy();
    return {0.0, q, q, true};
  }
  return {p.lambda(), p.q_low(), p.q_high(), false};
}

}  // namespace

const char* to_string(CandidateId id) {
  switch (id) {
    case CandidateId::kL0: return "L0";
    case CandidateId::kH0: return "H0";
    case CandidateId::kLL: return "LL";
    case CandidateId::kLH: return "LH";
    case CandidateId::kHL: return "HL";
    case CandidateId::kHH: return "HH";
  }
  return "?";
}

const char* to_string(Manipulability m) {
  switch (m) {
    case Manipulability::kAlwaysA: return "AlwaysA";
    case Manipulability::kManipulable: return "Manipulable";
    case Manipulability::kNotManipulable: return "NotManipulable";
  }
  return "?";
}

const char* to_string(BiasSignSummary s) {
  switch (s) {
    case BiasSignSummary::kAllPositive: return "all-positive";
    case BiasSignSummary::kAllNonPositive: return "all-nonpositive";
    case BiasSignSummary::kAllNegative: return "all-negative";
    case BiasSignSummary::kMixed: return "mixed";
    case BiasSignSummary::kContainsUnbiased: return "contains-unbiased";
  }
  return "?";
}

double q_ni(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("lambda must lie in [0, 1]");
  if (lambda == 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (2.0 * (1.0 - lambda));
}

double q_bar(double lambda) {
  if (lambda < 0.0 || lambda >= 1.0)
    throw std::invalid_argument("q_bar requires lambda in [0, 1)");
  return (-lambda + std::sqrt(lambda * lambda + 2.0 - 2.0 * lambda)) /
         (2.0 - 2.0 * lambda);
}

double lambda_under(double q_high) {
  if (q_high <= 0.5 || q_high > kSqrt2Over2 + kDegenerateTol)
    throw std::invalid_argument(
        "lambda_under requires q_high in (1/2, sqrt(2)/2]");
  return (0.5 - q_high * q_high) / (q_high * (1.0 - q_high));
}

namespace {

// Closed-form share of B voters in theta_B for each candidate row.
double b_share_formula(CandidateId id, double lambda, double ql, double qh) {
  switch (id) {
    case CandidateId::kL0:
      return 1.0 - (1.0 - ql) * (1.0 - qh + lambda * qh) / ql;
    case CandidateId::kH0:
      return (2.0 * qh - 1.0) / qh;
    case CandidateId::kLL:
      return qh - lambda * (qh - ql * ql);
    case CandidateId::kLH:
      return lambda * qh * (2.0 * ql - 1.0) / (qh + ql - 1.0) +
             (1.0 - lambda) * qh;
    case CandidateId::kHL:
      return (lambda * ql + (1.0 - lambda) * qh) * ql * (2.0 * qh - 1.0) /
             (qh + ql - 1.0);
    case CandidateId::kHH:
      return qh * qh + lambda * qh * (1.0 - qh);
  }
  throw std::logic_error("unreachable candidate id");
}

CandidateSignal make_candidate(CandidateId id, double alpha, double beta,
                               double formula_b_share,
                               const PopulationProfile& profile) {
  const SignalSpec signal = SignalSpec::from_posteriors(alpha, beta);
  const double a_share =
      exact_vote_share(profile, signal, StateOfWorld::kThetaB);
  return {id,      signal, formula_b_share, a_share, bias(signal).value(),
          at_least_half(a_share)};
}

}  // namespace

std::vector<CandidateSignal> candidate_signals(const PopulationProfile& profile) {
  const EffectiveProfile eff = effective(profile);
  std::vector<CandidateSignal> out;

  if (eff.homogeneous) {
    const double q = eff.q_high;
    if (q <= 0.5 + kDegenerateTol) return out;  // no informative candidates
    out.push_back(make_candidate(CandidateId::kH0, q, 0.0,
                                 b_share_formula(CandidateId::kH0, 0, q, q),
                                 profile));
    if (1.0 - q > 0.0)  // q = 1 duplicates (q, 0)
      out.push_back(make_candidate(CandidateId::kHH, q, 1.0 - q,
                                   b_share_formula(CandidateId::kHH, 0, q, q),
                                   profile));
    return out;
  }

  const double lambda = eff.lambda;
  const double ql = eff.q_low;
  const double qh = eff.q_high;
  const bool low_uninformative = ql <= 0.5 + kDegenerateTol;

  struct Row {
    CandidateId id;
    double alpha;
    double beta;
  };
  const Row rows[] = {
      {CandidateId::kL0, ql, 0.0},      {CandidateId::kH0, qh, 0.0},
      {CandidateId::kLL, ql, 1.0 - ql}, {CandidateId::kLH, ql, 1.0 - qh},
      {CandidateId::kHL, qh, 1.0 - ql}, {CandidateId::kHH, qh, 1.0 - qh}};
  for (const Row& row : rows) {
    // q_low = 1/2 degenerates the alpha = q_low and beta = 1 - q_low rows.
    if (low_uninformative &&
        (row.alpha <= 0.5 + kDegenerateTol || row.beta >= 0.5 - kDegenerateTol))
      continue;
    const bool duplicate =
        std::any_of(out.begin(), out.end(), [&](const CandidateSignal& c) {
          return c.signal.alpha() == row.alpha && c.signal.beta() == row.beta;
        });
    if (duplicate) continue;
    out.push_back(make_candidate(
        row.id, row.alpha, row.beta,
        b_share_formula(row.id, lambda, ql, qh), profile));
  }
  return out;
}

namespace {

BiasSignSummary summarize_bias_signs(const std::vector<CandidateSignal>& ws) {
  int n_pos = 0, n_neg = 0, n_zero = 0;
  for (const CandidateSignal& w : ws) {
    if (std::abs(w.bias) <= kPosteriorTieTol)
      ++n_zero;
    else if (w.bias > 0.0)
      ++n_pos;
    else
      ++n_neg;
  }
  if (n_pos > 0 && n_neg > 0) return BiasSignSummary::kMixed;
  if (n_pos > 0 && n_zero > 0) return BiasSignSummary::kContainsUnbiased;
  if (n_pos > 0) return BiasSignSummary::kAllPositive;
  if (n_zero > 0) return BiasSignSummary::kAllNonPositive;
  return BiasSignSummary::kAllNegative;
}

bool manipulable_with_all_signs(const PopulationProfile& profile,
                                bool positive) {
  if (at_least_half(exact_vote_share(profile, SignalSpec::uninformative(),
                                     StateOfWorld::kThetaB)))
    return false;  // AlwaysA
  bool any = false;
  for (const CandidateSignal& c : candidate_signals(profile)) {
    if (!c.optimal) continue;
    any = true;
    if (positive ? c.bias <= kPosteriorTieTol : c.bias >= -kPosteriorTieTol)
      return false;
  }
  return any;
}

std::vector<LambdaInterval> sign_intervals(double q_low, double q_high,
                                           bool positive) {
  // Scan the open interior of [0, 1]; lambda in {0, 1} is a homogeneous
  // profile and outside the heterogeneous regimes.
  constexpr double kScanStep = 1e-3;
  constexpr double kRefineTol = 1e-9;
  const auto pred = [&](double lambda) {
    return manipulable_with_all_signs(PopulationProfile(lambda, q_low, q_high),
                                      positive);
  };
  std::vector<LambdaInterval> out;
  bool inside = false;
  double run_start = 0.0;
  double prev = 0.0;
  for (int i = 1; i * kScanStep < 1.0; ++i) {
    const double lambda = i * kScanStep;
    const bool hit = pred(lambda);
    if (hit && !inside) {
      inside = true;
      run_start = lambda;
    } else if (!hit && inside) {
      inside = false;
      out.push_back({run_start, prev});
    }
    prev = lambda;
  }
  if (inside) out.push_back({run_start, prev});

  // Refine each endpoint against its non-member neighbor by bisection.
  for (LambdaInterval& iv : out) {
    double lo_out = std::max(0.0, iv.lo - kScanStep);
    double lo_in = iv.lo;
    if (!pred(lo_out)) {
      while (lo_in - lo_out > kRefineTol) {
        const double mid = 0.5 * (lo_out + lo_in);
        (pred(mid) ? lo_in : lo_out) = mid;
      }
      iv.lo = lo_in;
    } else {
      iv.lo = lo_out;
    }
    double hi_in = iv.hi;
    double hi_out = std::min(1.0, iv.hi + kScanStep);
    if (!pred(hi_out)) {
      while (hi_out - hi_in > kRefineTol) {
        const double mid = 0.5 * (hi_in + hi_out);
        (pred(mid) ? hi_in : hi_out) = mid;
      }
      iv.hi = hi_in;
    } else {
      iv.hi = hi_out;
    }
  }
  return out;
}

bool lambda_in_any(const std::vector<LambdaInterval>& ivs, double lambda) {
  return std::any_of(ivs.begin(), ivs.end(), [&](const LambdaInterval& iv) {
    return lambda >= iv.lo && lambda <= iv.hi;
  });
}

std::vector<std::string> regime_tags_for(const PopulationProfile& profile,
                                         const std::vector<CandidateSignal>& ws) {
  std::vector<std::string> tags;
  const EffectiveProfile eff = effective(profile);

  // Partially uninformed regime: q_low = 1/2 (or a single class) with
  // q_high in (2/3, q_bar(lambda)] -> all optimal signals have bias <= 0.
  const bool partially_uninformed =
      eff.homogeneous || eff.q_low <= 0.5 + kDegenerateTol;
  if (partially_uninformed && eff.q_high > kTwoThirds + kDegenerateTol &&
      eff.q_high <= q_bar(eff.lambda) + kShareTol) {
    tags.push_back("partially-uninformed-nonpositive");
  }

  // The heterogeneous uniquely-signed regimes have no closed form; they are
  // located numerically from the candidate set itself (see sign_intervals).
  if (!eff.homogeneous && !ws.empty()) {
    if (eff.q_high > kTwoThirds + kDegenerateTol) {
      const auto pos = sign_intervals(eff.q_low, eff.q_high, true);
      if (lambda_in_any(pos, eff.lambda))
        tags.push_back("heterogeneous-positive");
    }
    if (eff.q_high > kTwoThirds + kDegenerateTol &&
        eff.q_high < kSqrt2Over2 - kDegenerateTol) {
      const auto neg = sign_intervals(eff.q_low, eff.q_high, false);
      if (lambda_in_any(neg, eff.lambda))
        tags.push_back("heterogeneous-negative");
    }
  }
  return tags;
}

}  // namespace

ManipulabilityReport classify(const PopulationProfile& profile) {
  ManipulabilityReport report;
  report.uninformative_a_share_theta_b = exact_vote_share(
      profile, SignalSpec::uninformative(), StateOfWorld::kThetaB);
  report.candidates = candidate_signals(profile);

  if (at_least_half(report.uninformative_a_share_theta_b)) {
    report.classification = Manipulability::kAlwaysA;
    return report;
  }
  for (const CandidateSignal& c : report.candidates)
    if (c.optimal) report.witnesses.push_back(c);
  if (report.witnesses.empty()) {
    report.classification = Manipulability::kNotManipulable;
    return report;
  }
  report.classification = Manipulability::kManipulable;
  report.bias_signs = summarize_bias_signs(report.witnesses);
  return report;
}

BiasDirection bias_direction(const PopulationProfile& profile) {
  const ManipulabilityReport report = classify(profile);
  if (report.classification != Manipulability::kManipulable)
    throw std::invalid_argument(
        "bias_direction requires a Manipulable profile");
  return {*report.bias_signs, regime_tags_for(profile, report.witnesses)};
}

std::optional<double> min_lambda_high_manipulable(double q_low,
                                                  double q_high) {
  PopulationProfile(0.5, q_low, q_high);  // validate the accuracy pair
  constexpr CandidateId kDecreasingRows[] = {CandidateId::kL0, CandidateId::kLL,
                                             CandidateId::kLH, CandidateId::kHL};
  std::optional<double> best;
  for (const CandidateId id : kDecreasingRows) {
    const auto b_share = [&](double lambda) {
      return b_share_formula(id, lambda, q_low, q_high);
    };
    if (b_share(1.0) > 0.5 + kShareTol) continue;  // never crosses
    if (b_share(0.0) <= 0.5 + kShareTol) {
      best = 0.0;
      continue;
    }
    double lo = 0.0, hi = 1.0;  // b_share(lo) > 1/2 >= b_share(hi)
    while (hi - lo > 1e-9) {
      const double mid = 0.5 * (lo + hi);
      (b_share(mid) > 0.5 ? lo : hi) = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    if (!best || crossing < *best) best = crossing;
  }
  return best;
}

std::vector<LambdaInterval> positive_bias_lambda_intervals(double q_low,
                                                           double q_high) {
  return sign_intervals(q_low, q_high, true);
}

std::vector<LambdaInterval> negative_bias_lambda_intervals(double q_low,
                                                           double q_high) {
  return sign_intervals(q_low, q_high, false);
}

}  // namespace persuasion

#pragma once
// Model variants: continuous accuracy distributions, per-class targeted
// signals, strongly targeted signals conditioning on the exogenous
// realization, and the public-persuasion (common realization) comparison.

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persuasion/analysis.hpp"
#include "persuasion/core.hpp"

namespace persuasion {

struct DensitySegment {
  double lo;
  double hi;     // value applies on [lo, hi)
  double value;  // constant density, >= 0
};

struct MassAtom {
  double accuracy;
  double mass;
};

// Accuracy distribution on [0.5, 1]: a piecewise-constant density plus
// optional point masses. Atoms are not expressible in the breakpoint file
// format; they exist so finite mixes (in particular two-class profiles) embed
// exactly, which keeps all quadrature closed-form.
class ContinuousProfile {
 public:
  static ContinuousProfile from_parts(std::vector<DensitySegment> segments,
                                      std::vector<MassAtom> atoms = {});
  // Plain-text table: header line "breakpoint value", then rows of two
  // decimals. Row i's value applies on [b_i, b_{i+1}); the last row extends to
  // 1.0. Breakpoints must be increasing and within [0.5, 1]; the total mass
  // must be 1 (within 1e-9) or the profile is rejected.
  static ContinuousProfile from_breakpoint_table(std::istream& in);
  static ContinuousProfile two_atom(const PopulationProfile& profile);

  const std::vector<DensitySegment>& segments() const { return segments_; }
  const std::vector<MassAtom>& atoms() const { return atoms_; }
  double total_mass() const { return total_mass_; }
  std::pair<double, double> support() const;  // [inf, sup] of positive mass

 private:
  ContinuousProfile() = default;

  std::vector<DensitySegment> segments_;
  std::vector<MassAtom> atoms_;
  double total_mass_ = 0.0;
};

enum class ContinuousClass { kManipulable, kNotManipulable, kUndetermined };

const char* to_string(ContinuousClass c);

struct ContinuousReport {
  ContinuousClass analytic;  // kUndetermined when the support straddles
                             // (2/3, sqrt(2)/2) and no sufficient condition applies
  bool manipulable;          // final decision (analytic, or numeric fallback)
  std::string method;        // "analytic" or "numeric"
  std::optional<double> max_a_share_theta_b;
  std::optional<SignalSpec> best_signal;
};

// Sufficient conditions first: support in [sqrt(2)/2, 1] is never manipulable,
// support in [1/2, 2/3] always is (witness (sup, 0)). Otherwise a grid search
// over binary signals, with exact per-signal quadrature, decides numerically.
ContinuousReport continuous_classify(const ContinuousProfile& profile,
                                     double step = 0.005);

// A-share of voters with one accuracy under one signal in theta_B, integrated
// against the profile (exact: the integrand is piecewise linear in accuracy).
double continuous_share_theta_b(const ContinuousProfile& profile,
                                const SignalSpec& signal);

struct ClassSignalPlan {
  double accuracy = 0.5;
  double weight = 0.0;
  SignalSpec signal = SignalSpec::uninformative();  // stays so for a 1/2 class
  double a_share_theta_b = 0.0;  // max{(1-q)/q, 1-q^2}
  bool at_crossover = false;     // both per-class choices tie at (sqrt(5)-1)/2
};

struct TargetedReport {
  bool manipulable;
  double lhs;  // weighted best per-class A-share in theta_B, compared to 1/2
  std::vector<ClassSignalPlan> plans;
};

// Designer picks the best of (q, 0) and (q, 1 - q) separately per accuracy
// class; manipulable iff the weighted A-shares reach 1/2.
TargetedReport targeted_classify(const PopulationProfile& profile);
TargetedReport targeted_classify(const ContinuousProfile& profile);

struct StronglyTargetedReport {
  bool manipulable;
  double lhs;  // 2 E[1 - q], compared to 1/2
};

// Designer additionally observes each voter's exogenous realization: pro-A
// voters get no signal, pro-B voters get (q, 0), yielding a 2(1 - q) A-share
// per class in theta_B.
StronglyTargetedReport strongly_targeted_classify(
    const PopulationProfile& profile);
StronglyTargetedReport strongly_targeted_classify(
    const ContinuousProfile& profile);

struct PublicCompareReport {
  Manipulability private_classification = Manipulability::kNotManipulable;
  SignalSpec best_public_signal = SignalSpec::uninformative();
  double public_p_a_theta_a = 0.0;  // P(A wins | theta_A) under the best signal
  double public_p_a_theta_b = 0.0;
  std::string preferred_medium;     // "private", "public", or "either"
};

// All voters observe the same realization; the majority winner per (state,
// realization) is deterministic, so each signal yields win probabilities per
// state. The best binary public signal is found by grid search (candidate
// thresholds injected) maximizing the designer's overall win probability.
PublicCompareReport public_persuasion_compare(const PopulationProfile& profile,
                                              double step = 0.005);

}  // namespace persuasion

#include "persuasion/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace persuasion {

namespace {

// Grid coordinates are snapped to 12 decimals so that, e.g., 0.5 + 7 * 0.01
// is exactly 0.57 and boundary cases (q_low = 0.5) are hit exactly.
double snap(double x) { return std::round(x * 1e12) / 1e12; }

std::vector<double> grid(double lo, double hi, double step) {
  if (step <= 0.0) throw std::invalid_argument("sweep step must be positive");
  if (hi < lo) throw std::invalid_argument("sweep range is empty");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double x = snap(lo + i * step);
    if (x > hi + 1e-12) break;
    out.push_back(std::min(x, hi));
  }
  return out;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  for (const double q_low : grid(spec.q_low_min, spec.q_low_max, spec.q_low_step)) {
    for (const double lambda :
         grid(spec.lambda_min, spec.lambda_max, spec.lambda_step)) {
      const PopulationProfile profile(lambda, q_low, spec.q_high);
      const ManipulabilityReport report = classify(profile);
      SweepRow row;
      row.q_low = q_low;
      row.q_high = spec.q_high;
      row.lambda = lambda;
      row.classification = report.classification;
      row.n_witnesses = static_cast<int>(report.witnesses.size());
      for (const CandidateSignal& w : report.witnesses) {
        row.bias_min = row.bias_min ? std::min(*row.bias_min, w.bias) : w.bias;
        row.bias_max = row.bias_max ? std::max(*row.bias_max, w.bias) : w.bias;
      }
      const auto best = std::max_element(
          report.candidates.begin(), report.candidates.end(),
          [](const CandidateSignal& a, const CandidateSignal& b) {
            return a.a_share_theta_b < b.a_share_theta_b;
          });
      row.best_candidate_id =
          best == report.candidates.end() ? "none" : to_string(best->id);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "q_low,q_high,lambda,classification,n_witnesses,bias_min,bias_max,"
         "best_candidate_id\n";
  for (const SweepRow& r : rows) {
    out << format_number(r.q_low) << ',' << format_number(r.q_high) << ','
        << format_number(r.lambda) << ',' << to_string(r.classification) << ','
        << r.n_witnesses << ','
        << (r.bias_min ? format_number(*r.bias_min) : "") << ','
        << (r.bias_max ? format_number(*r.bias_max) : "") << ','
        << r.best_candidate_id << '\n';
  }
}

}  // namespace persuasion

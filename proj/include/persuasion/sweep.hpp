#pragma once
// Grid sweeps over (q_low, lambda) at fixed q_high, classified cell by cell.
// Rows are ordered lexicographically by (q_low, lambda) and serialize to CSV
// byte-identically across runs.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "persuasion/analysis.hpp"

namespace persuasion {

struct SweepSpec {
  double q_high;
  double q_low_min;
  double q_low_max;
  double q_low_step;
  double lambda_min;
  double lambda_max;
  double lambda_step;
};

struct SweepRow {
  double q_low;
  double q_high;
  double lambda;
  Manipulability classification;
  int n_witnesses;
  std::optional<double> bias_min;  // over witnesses; empty when none
  std::optional<double> bias_max;
  std::string best_candidate_id;   // candidate with the highest A-share
};

std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

}  // namespace persuasion

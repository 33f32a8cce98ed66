#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hcount/census.hpp"

namespace hcount {

struct ExperimentConfig {
  std::string field_spec;  // field description text (see parse_field_spec)
  std::optional<std::vector<std::vector<BigInt>>> submodule_basis;
  int n = 1;
  std::vector<Rat> X_schedule;  // values >= 1, strictly increasing
  // signatures to count; empty selects the whole height ball
  std::vector<std::vector<int>> I_selection;
  std::uint64_t cap = 100000000;
  int threads = 0;
};

struct ComparisonRow {
  Rat X;
  long long observed = 0;
  double main_term = 0;
  double residual = 0;             // observed - main_term
  double normalized_residual = 0;  // residual / (X^{dn-1} (log+ X)^{q'})
  double ratio = 0;                // observed / main_term; 0 when main = 0
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;  // sorted by X
  double c_hat = 0;                 // max |normalized residual|
  bool trend_to_one = false;        // |ratio - 1| non-increasing in X

  std::string to_json() const;
  std::string to_csv() const;
};

// Exact census counts against the volume main terms over the X schedule.
// Residuals are normalized by the predicted error shape, so a bounded
// normalized column is the desk-scale expression of the error bound.
ComparisonReport run_experiment(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// The acceptance checks, with fixed seeds and pinned tolerances.  A
// nonempty filter keeps the checks whose name contains it as a substring.
std::vector<CheckResult> verify_suite(const std::string& filter = "");

}  // namespace hcount

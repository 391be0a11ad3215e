#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rotval {

/// Result of a randomized or scanning experiment.
struct ExperimentReport {
  std::string name;
  std::uint64_t seed = 0;
  std::map<std::string, double> parameters;
  /// Per-item estimates (one per body or trial) and their standard errors.
  std::vector<double> estimates;
  std::vector<double> standard_errors;
  /// Fitted constants, if the experiment regresses onto features.
  std::vector<std::string> labels;
  std::vector<double> coefficients;
  std::vector<double> coefficient_errors;
  std::vector<double> residuals;
  double residual_norm = 0.0;
  /// Threshold the residual norm was compared against.
  double residual_bound = 0.0;
  bool pass = false;
  /// Counters such as violations found.
  std::map<std::string, double> counts;
  std::vector<std::string> notes;
};

}  // namespace rotval

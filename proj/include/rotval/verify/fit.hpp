#pragma once

#include "rotval/core/lstsq.hpp"

#include <map>
#include <string>

namespace rotval {

/// Outcome of one check or regression. `pass` is decided by comparing the
/// relative residual with the threshold; auxiliary quantities that enter a
/// verdict (overflow coefficients, gains) are listed in `extras` and the
/// verdict rule of each check says how.
struct FitReport {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::string> labels;
  std::vector<double> coefficients;
  double relative_residual = 0.0;
  double condition = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::map<std::string, double> extras;
};

/// Least-squares fit with named columns; throws FitError if the design is
/// rank deficient.
inline FitReport fit_report(std::string name, const Mat& design, const Vec& target, std::vector<std::string> labels, double threshold, double floor = 0.0) {
  const LeastSquares ls = solve_least_squares(design, target, floor);
  if (ls.rank < design.cols()) throw FitError(name + ": rank-deficient design (" + std::to_string(ls.rank) + " of " + std::to_string(design.cols()) + ")");
  FitReport r;
  r.name = std::move(name);
  r.rows = static_cast<std::size_t>(design.rows());
  r.cols = static_cast<std::size_t>(design.cols());
  r.labels = std::move(labels);
  r.coefficients.assign(ls.coefficients.data(), ls.coefficients.data() + ls.coefficients.size());
  r.relative_residual = ls.relative_residual;
  r.condition = ls.condition;
  r.threshold = threshold;
  r.pass = r.relative_residual <= threshold;
  return r;
}

}  // namespace rotval

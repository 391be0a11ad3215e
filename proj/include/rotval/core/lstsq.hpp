#pragma once

#include "rotval/core/types.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <limits>

namespace rotval {

/// Least-squares solution of A c ~ b with columns scaled to unit norm.
struct LeastSquares {
  Vec coefficients;
  Vec residuals;
  /// ||A c - b|| / ||b|| (absolute when b = 0).
  double relative_residual = 0.0;
  /// Ratio of extreme singular values of the column-scaled design.
  double condition = 0.0;
  int rank = 0;
};

/// The residual is reported relative to max(||b||, floor), so data that is
/// zero up to rounding does not produce a spurious large relative residual.
inline LeastSquares solve_least_squares(const Mat& a, const Vec& b, double floor = 0.0, double rank_tol = 1e-12) {
  if (a.rows() != b.size()) throw std::invalid_argument("least squares: row count mismatch");
  if (a.rows() < a.cols()) throw FitError("least squares: fewer rows than unknowns");
  Vec scale(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double n = a.col(j).norm();
    scale[j] = n > 0 ? n : 1.0;
  }
  const Mat scaled = a * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Mat> qr(scaled);
  qr.setThreshold(rank_tol);
  LeastSquares out;
  out.rank = static_cast<int>(qr.rank());
  const Vec sv = Eigen::JacobiSVD<Mat>(scaled).singularValues();
  out.condition = sv.size() > 0 && sv[sv.size() - 1] > 0 ? sv[0] / sv[sv.size() - 1] : std::numeric_limits<double>::infinity();
  out.coefficients = qr.solve(b).cwiseQuotient(scale);
  out.residuals = a * out.coefficients - b;
  const double bn = std::max(b.norm(), floor);
  out.relative_residual = bn > 0 ? out.residuals.norm() / bn : out.residuals.norm();
  return out;
}

}  // namespace rotval

#pragma once

#include "rotval/core/types.hpp"

#include <cmath>
#include <vector>

namespace rotval {

/// Polynomial in the parallel-body radius: value(eps) = sum_j coeffs[j] eps^j.
struct EpsilonPolynomial {
  int degree_bound = 0;
  std::vector<double> coeffs;

  double coefficient(int j) const { return j >= 0 && j < static_cast<int>(coeffs.size()) ? coeffs[static_cast<std::size_t>(j)] : 0.0; }

  /// j-th derivative at eps = 0, i.e. j! * coeffs[j].
  double derivative(int j) const { return factorial(j) * coefficient(j); }

  std::vector<double> derivatives() const {
    std::vector<double> out(coeffs.size());
    for (std::size_t j = 0; j < coeffs.size(); ++j) out[j] = factorial(static_cast<int>(j)) * coeffs[j];
    return out;
  }

  double evaluate(double eps) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * eps + *it;
    return v;
  }

  /// Highest index with |c_j| above `cutoff` (-1 for the zero polynomial).
  int effective_degree(double cutoff) const {
    for (int j = static_cast<int>(coeffs.size()) - 1; j >= 0; --j) {
      if (std::abs(coeffs[static_cast<std::size_t>(j)]) > cutoff) return j;
    }
    return -1;
  }
};

}  // namespace rotval

#pragma once

#include "rotval/valuations/parallel_body.hpp"

#include <functional>
#include <memory>
#include <mutex>
#include <tuple>

namespace rotval {

/// Value of the valuation on the body itself. Moments vanish on lower-
/// dimensional bodies; boundary valuations follow the codimension convention
/// of `boundary_integral`.
inline double evaluate(const ValuationDescriptor& desc, const Polytope& p) {
  const ValuationIntegrand integrand = integrand_for(desc, p.dim);
  if (p.empty()) return 0.0;
  if (integrand.interior) return p.full_dimensional() ? integrate_polynomial(p, *integrand.interior) : 0.0;
  return boundary_integral(p, *integrand.boundary);
}

/// Degree bound of eps -> phi(K + eps*B): the translation degree plus the dimension.
/// Upper bound for the integral of the absolute integrand: |<s,n>^p ...| is
/// at most |s|^n with n the total s-degree, and for odd n
/// |s|^n <= (|s|^(n-1) + |s|^(n+1)) / 2. Used as the scale of residuals so
/// that valuations which vanish by cancellation are not judged by noise.
inline double absolute_scale(const ValuationDescriptor& desc, const Polytope& p) {
  if (desc.kind == ValuationDescriptor::Kind::moment) return evaluate(desc, p);
  const int n = desc.kind == ValuationDescriptor::Kind::xi ? desc.p + 2 * desc.q : desc.p + desc.q;
  if (n % 2 == 0) return evaluate(ValuationDescriptor::xi(0, n / 2), p);
  return 0.5 * (evaluate(ValuationDescriptor::xi(0, (n - 1) / 2), p) + evaluate(ValuationDescriptor::xi(0, (n + 1) / 2), p));
}

inline int epsilon_degree_bound(const ValuationDescriptor& desc, int dim) { return desc.degree() + dim; }

/// Cached separated integrand for a descriptor in a given dimension.
inline const PreparedIntegrand& prepared_integrand(const ValuationDescriptor& desc, int dim) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, int, int, int>, std::unique_ptr<PreparedIntegrand>> cache;
  const auto key = std::make_tuple(static_cast<int>(desc.kind), desc.m, desc.p, desc.q, dim);
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<PreparedIntegrand>(prepare_integrand(integrand_for(desc, dim)));
  return *slot;
}

/// phi(K + eps*B) evaluated directly by quadrature over the face decomposition.
inline double evaluate_on_parallel_body(const ValuationDescriptor& desc, const Polytope& p, double eps) {
  return integrate_parallel_body(integrand_for(desc, p.dim), p, eps);
}

/// Coefficients of eps -> phi(K + eps*B) from the symbolic expansion.
inline EpsilonPolynomial steiner_coefficients(const ValuationDescriptor& desc, const Polytope& p) {
  return expand_parallel_body(prepared_integrand(desc, p.dim), p, epsilon_degree_bound(desc, p.dim));
}

/// Result of fitting sampled values of eps -> phi(K + eps*B).
struct SteinerFit {
  EpsilonPolynomial polynomial;
  double relative_residual = 0.0;
  /// Largest |coefficient| of degree D+1, D+2 in an interpolating fit,
  /// relative to the largest coefficient (in the scaled variable eps / R).
  double overflow = 0.0;
  double radius = 1.0;
};

/// Fits a polynomial of degree `degree_bound` to values at degree_bound + 3
/// Chebyshev nodes on [0, radius].
inline SteinerFit fit_epsilon_polynomial(const std::function<double(double)>& values, int degree_bound, double radius) {
  const int n = degree_bound + 3;
  if (!(radius > 0)) radius = 1.0;
  Vec t(n), y(n);
  for (int i = 0; i < n; ++i) {
    t[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n)));
    y[i] = values(radius * t[i]);
  }
  auto vandermonde = [&](int deg) {
    Mat v(n, deg + 1);
    for (int i = 0; i < n; ++i) {
      double pw = 1.0;
      for (int j = 0; j <= deg; ++j) {
        v(i, j) = pw;
        pw *= t[i];
      }
    }
    return v;
  };
  const Mat v = vandermonde(degree_bound);
  const Vec b = v.colPivHouseholderQr().solve(y);
  const Mat ve = vandermonde(degree_bound + 2);
  const Vec be = ve.colPivHouseholderQr().solve(y);
  SteinerFit fit;
  fit.radius = radius;
  const double ynorm = y.norm();
  fit.relative_residual = ynorm > 0 ? (v * b - y).norm() / ynorm : (v * b - y).norm();
  const double top = std::max(be.head(degree_bound + 1).cwiseAbs().maxCoeff(), 1e-300);
  fit.overflow = std::max(std::abs(be[degree_bound + 1]), std::abs(be[degree_bound + 2])) / top;
  if (ynorm == 0.0) fit.overflow = 0.0;
  fit.polynomial.degree_bound = degree_bound;
  fit.polynomial.coeffs.resize(static_cast<std::size_t>(degree_bound + 1));
  for (int j = 0; j <= degree_bound; ++j) fit.polynomial.coeffs[static_cast<std::size_t>(j)] = b[j] / std::pow(radius, j);
  return fit;
}

/// Fit path: sample the direct parallel-body evaluator and fit against the
/// known degree bound. Nodes are scaled by the circumradius.
inline SteinerFit steiner_coefficients_fit(const ValuationDescriptor& desc, const Polytope& p) {
  const double radius = p.empty() ? 1.0 : std::max(circumradius(p, vertex_centroid(p)), 1e-3);
  const ValuationIntegrand integrand = integrand_for(desc, p.dim);
  return fit_epsilon_polynomial([&](double eps) { return integrate_parallel_body(integrand, p, eps); }, epsilon_degree_bound(desc, p.dim), radius);
}

/// Quermassintegrals W_0..W_d from vol(K + eps*B) = sum_j binom(d, j) W_j eps^j.
inline std::vector<double> quermassintegrals(const Polytope& p) {
  const EpsilonPolynomial vol = steiner_coefficients(ValuationDescriptor::moment(0), p);
  std::vector<double> w(static_cast<std::size_t>(p.dim + 1));
  for (int j = 0; j <= p.dim; ++j) w[static_cast<std::size_t>(j)] = vol.coefficient(j) / binomial(p.dim, j);
  return w;
}

/// j-th eps-derivative at zero of phi(K + eps*B).
inline double derivative_valuation(const ValuationDescriptor& desc, int j, const Polytope& p) { return steiner_coefficients(desc, p).derivative(j); }

}  // namespace rotval

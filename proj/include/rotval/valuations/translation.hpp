#pragma once

#include "rotval/core/lstsq.hpp"
#include "rotval/valuations/evaluate.hpp"

#include <functional>

namespace rotval {

using BodyFunctional = std::function<double(const Polytope&)>;

/// Fit of x -> phi(K + x) by a polynomial of total degree `degree`.
struct TranslationFit {
  int degree = 0;
  MultiPoly polynomial;
  double relative_residual = 0.0;
  /// Residual of the refit at degree + 1 on the same grid.
  double refit_residual = 0.0;
  double condition = 0.0;
  std::size_t samples = 0;

  MultiPoly leading_form() const { return polynomial.homogeneous_part(degree); }
};

namespace detail {

/// Tensor grid of `per_axis` Chebyshev nodes per coordinate on [-a, a]^d.
inline std::vector<Vec> chebyshev_grid(int d, int per_axis, double a) {
  std::vector<double> nodes(static_cast<std::size_t>(per_axis));
  for (int i = 0; i < per_axis; ++i) nodes[static_cast<std::size_t>(i)] = a * std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * per_axis));
  std::vector<Vec> out;
  std::vector<int> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Vec x(d);
    for (int k = 0; k < d; ++k) x[k] = nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])];
    out.push_back(x);
    int k = 0;
    while (k < d && ++idx[static_cast<std::size_t>(k)] == per_axis) idx[static_cast<std::size_t>(k++)] = 0;
    if (k == d) break;
  }
  return out;
}

inline LeastSquares fit_monomials(const std::vector<Vec>& xs, const Vec& values, const std::vector<Exponent>& monomials) {
  Mat a(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(monomials.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < monomials.size(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = monomial_value(monomials[j], xs[i]);
  }
  // unit-scale bodies: a root-mean-square value below 1e-6 counts as zero data
  return solve_least_squares(a, values, 1e-6 * std::sqrt(static_cast<double>(xs.size())));
}

}  // namespace detail

/// Samples phi(K + x) on a Chebyshev tensor grid with degree + 2 nodes per
/// axis over [-half_width, half_width]^d and fits degree `degree`; the same
/// values are refit at degree + 1.
inline TranslationFit translation_polynomial(const BodyFunctional& phi, const Polytope& p, int degree, double half_width = 1.0) {
  if (degree < 0) throw std::invalid_argument("translation degree must be nonnegative");
  const int d = p.dim;
  const auto xs = detail::chebyshev_grid(d, degree + 2, half_width);
  Vec values(static_cast<Eigen::Index>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) values[static_cast<Eigen::Index>(i)] = phi(translated(p, xs[i]));
  const auto monomials = monomials_up_to(d, degree);
  const LeastSquares fit = detail::fit_monomials(xs, values, monomials);
  const LeastSquares refit = detail::fit_monomials(xs, values, monomials_up_to(d, degree + 1));
  TranslationFit out;
  out.degree = degree;
  out.polynomial = MultiPoly(d);
  for (std::size_t j = 0; j < monomials.size(); ++j) out.polynomial.add_term(monomials[j], fit.coefficients[static_cast<Eigen::Index>(j)]);
  out.relative_residual = fit.relative_residual;
  out.refit_residual = refit.relative_residual;
  out.condition = fit.condition;
  out.samples = xs.size();
  return out;
}

inline TranslationFit translation_polynomial(const ValuationDescriptor& desc, const Polytope& p, int degree, double half_width = 1.0) {
  if (degree < desc.degree()) throw std::invalid_argument("translation degree below the degree of polynomiality");
  return translation_polynomial([&](const Polytope& k) { return evaluate(desc, k); }, p, degree, half_width);
}

/// Translation behaviour of the j-th eps-derivative of a descriptor.
inline TranslationFit derivative_translation_polynomial(const ValuationDescriptor& desc, int j, const Polytope& p, int degree, double half_width = 1.0) {
  if (j == 0) return translation_polynomial([&](const Polytope& k) { return evaluate(desc, k); }, p, degree, half_width);
  return translation_polynomial([&](const Polytope& k) { return derivative_valuation(desc, j, k); }, p, degree, half_width);
}

/// Facet-wise surface-measure pairing for the top-degree part of the j-th
/// eps-derivative of xi(p, q), p != 1:
///   j! |x|^(2q) sum over faces F of dimension d-1-j of vol(F) ∫_{N(F) ∩ S} <x, w>^p dw.
/// The result is a homogeneous polynomial of degree p + 2q in x.
inline MultiPoly xi_leading_form(int p_exp, int q_exp, int j, const Polytope& body) {
  detail::check_engine_dim(body);
  const int d = body.dim;
  MultiPoly out(d);
  if (body.empty() || j < 0 || j > d - 1) return out;
  std::vector<Exponent> betas;
  for (const auto& e : monomials_up_to(d, p_exp)) {
    if (total_degree(e) == p_exp) betas.push_back(e);
  }
  // multinomial coefficients of <x, w>^p
  std::vector<double> multinomial;
  for (const auto& e : betas) {
    double c = factorial(p_exp);
    for (int k : e) c /= factorial(k);
    multinomial.push_back(c);
  }
  std::vector<double> pairing(betas.size(), 0.0);
  for (const Face& face : faces(body)) {
    if (face.dim != d - 1 - j) continue;
    double measure = 1.0;
    if (face.dim > 0) {
      measure = 0.0;
      for (const auto& s : detail::face_simplices(body, face)) measure += simplex_measure(s);
    }
    for (const auto& piece : normal_cone_pieces(body, face)) {
      const auto mom = cone_moments(piece, betas);
      for (std::size_t i = 0; i < betas.size(); ++i) pairing[i] += measure * mom[i];
    }
  }
  MultiPoly form(d);
  for (std::size_t i = 0; i < betas.size(); ++i) form.add_term(betas[i], factorial(j) * multinomial[i] * pairing[i]);
  return form * norm_squared_poly(d, 0, d).pow(q_exp);
}

/// Maximum of |a(x) - b(x)| over the given points, relative to the largest |b(x)|.
inline double relative_difference_on(const MultiPoly& a, const MultiPoly& b, const std::vector<Vec>& xs) {
  double diff = 0.0, scale = 0.0;
  for (const auto& x : xs) {
    diff = std::max(diff, std::abs(a.evaluate(x) - b.evaluate(x)));
    scale = std::max(scale, std::abs(b.evaluate(x)));
  }
  return scale > 0 ? diff / scale : diff;
}

/// Empirical constant kappa with top-degree part of xi_{1,q}^{(j)}(K + x)
/// equal to kappa W_j(K) |x|^(2q); measured by fitting, never asserted.
struct KappaMeasurement {
  double kappa = 0.0;
  /// Relative distance of the fitted leading form from the best multiple of |x|^(2q).
  double shape_residual = 0.0;
};

inline KappaMeasurement measure_kappa(int q, int j, const Polytope& body) {
  const TranslationFit fit = derivative_translation_polynomial(ValuationDescriptor::xi(1, q), j, body, 2 * q);
  const MultiPoly lead = fit.leading_form();
  const MultiPoly radial = norm_squared_poly(body.dim, 0, body.dim).pow(q);
  const auto xs = detail::chebyshev_grid(body.dim, 3, 1.0);
  double num = 0.0, den = 0.0;
  for (const auto& x : xs) {
    num += lead.evaluate(x) * radial.evaluate(x);
    den += radial.evaluate(x) * radial.evaluate(x);
  }
  const double c = den > 0 ? num / den : 0.0;
  KappaMeasurement out;
  const double w = quermassintegrals(body)[static_cast<std::size_t>(j)];
  out.kappa = w != 0 ? c / w : 0.0;
  MultiPoly scaled_radial = radial;
  scaled_radial *= c;
  out.shape_residual = relative_difference_on(scaled_radial, lead, xs);
  return out;
}

}  // namespace rotval

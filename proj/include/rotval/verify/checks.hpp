#pragma once

#include "rotval/core/operations.hpp"
#include "rotval/core/random.hpp"
#include "rotval/valuations/evaluate.hpp"
#include "rotval/valuations/translation.hpp"
#include "rotval/verify/fit.hpp"

namespace rotval {

/// Cut form of the valuation property:
///   phi(P) + phi(P ∩ H) = phi(P ∩ H+) + phi(P ∩ H-).
/// The residual is relative to the largest of the four magnitudes and the
/// absolute-integrand scale of the two halves.
inline FitReport check_additivity(const ValuationDescriptor& desc, const Polytope& p, const Hyperplane& h, double threshold = 1e-9) {
  if (!p.full_dimensional()) throw GeometryError("check_additivity: body must be full dimensional");
  const SplitResult parts = split_by_hyperplane(p, h);
  const double whole = evaluate(desc, p);
  const double slice = evaluate(desc, parts.slice);
  const double pos = evaluate(desc, parts.positive);
  const double neg = evaluate(desc, parts.negative);
  const double scale = std::max({std::abs(whole), std::abs(slice), std::abs(pos), std::abs(neg), absolute_scale(desc, parts.positive) + absolute_scale(desc, parts.negative)});
  FitReport r;
  r.name = "additivity " + desc.name();
  r.labels = {"whole", "slice", "positive", "negative"};
  r.coefficients = {whole, slice, pos, neg};
  const double diff = std::abs(whole + slice - pos - neg);
  r.relative_residual = scale > 0 ? diff / scale : diff;
  r.threshold = threshold;
  r.pass = r.relative_residual <= threshold;
  return r;
}

namespace detail {

/// Sample points in [0,1]^s for a polynomial fit of total degree `degree`.
/// Small problems use a Chebyshev tensor grid with degree + 2 nodes per axis;
/// larger ones a seeded scatter with three times the monomial count.
inline std::vector<Vec> lambda_design(int s, int degree) {
  const double tensor = std::pow(degree + 2.0, s);
  if (tensor <= 400) {
    auto grid = chebyshev_grid(s, degree + 2, 0.5);
    for (auto& x : grid) x.array() += 0.5;
    return grid;
  }
  const std::size_t count = 3 * monomials_up_to(s, degree + 1).size();
  Rng rng = make_rng(0x5eed, static_cast<std::uint64_t>(s * 100 + degree));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < count; ++i) {
    Vec x(s);
    for (int k = 0; k < s; ++k) x[k] = u(rng);
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

/// Polynomiality in the Minkowski weights: fits phi(sum_i lambda_i K_i) on
/// lambda in [0,1]^s by a polynomial of total degree d + ell, then refits at
/// degree d + ell + 1. The fit is done in t = 2 lambda - 1.
/// Verdict: residual <= threshold and every degree d + ell + 1 coefficient
/// of the refit is at most overflow_threshold times the largest coefficient
/// (extras: "overflow", "refit_residual").
inline FitReport check_minkowski_polynomiality(const ValuationDescriptor& desc, const std::vector<Polytope>& bodies, int ell, double threshold = 1e-8, double overflow_threshold = 1e-6) {
  const int s = static_cast<int>(bodies.size());
  if (s < 1 || s > 4) throw std::invalid_argument("check_minkowski_polynomiality: between one and four bodies");
  const int d = bodies.front().dim;
  for (const auto& b : bodies) {
    if (b.dim != d) throw GeometryError("check_minkowski_polynomiality: bodies of different dimension");
  }
  const int degree = d + ell;
  const auto lambdas = detail::lambda_design(s, degree);
  if (lambdas.size() < monomials_up_to(s, degree + 1).size()) throw std::invalid_argument("check_minkowski_polynomiality: grid too small for degree");
  Vec values(static_cast<Eigen::Index>(lambdas.size()));
  std::vector<Vec> ts;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    std::vector<double> w(lambdas[i].data(), lambdas[i].data() + s);
    values[static_cast<Eigen::Index>(i)] = evaluate(desc, minkowski_combination(bodies, w));
    ts.push_back(2.0 * lambdas[i].array() - 1.0);
  }
  const double floor = 1e-6 * std::sqrt(static_cast<double>(values.size()));
  const auto base = monomials_up_to(s, degree);
  const auto extended = monomials_up_to(s, degree + 1);
  const LeastSquares fit = solve_least_squares([&] {
    Mat a(static_cast<Eigen::Index>(ts.size()), static_cast<Eigen::Index>(base.size()));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = 0; j < base.size(); ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = monomial_value(base[j], ts[i]);
    }
    return a;
  }(), values, floor);
  const LeastSquares refit = detail::fit_monomials(ts, values, extended);
  double top = 0.0, over = 0.0;
  for (std::size_t j = 0; j < extended.size(); ++j) {
    const double c = std::abs(refit.coefficients[static_cast<Eigen::Index>(j)]);
    if (total_degree(extended[j]) > degree) {
      over = std::max(over, c);
    } else {
      top = std::max(top, c);
    }
  }
  FitReport r;
  r.name = "minkowski polynomiality " + desc.name();
  r.rows = ts.size();
  r.cols = base.size();
  for (const auto& e : base) {
    std::string label = "t";
    for (int k : e) label += std::to_string(k);
    r.labels.push_back(label);
  }
  r.coefficients.assign(fit.coefficients.data(), fit.coefficients.data() + fit.coefficients.size());
  r.relative_residual = fit.relative_residual;
  r.condition = fit.condition;
  r.threshold = threshold;
  r.extras["overflow"] = top > 0 ? over / top : over;
  r.extras["refit_residual"] = refit.relative_residual;
  r.extras["overflow_threshold"] = overflow_threshold;
  r.pass = r.relative_residual <= threshold && r.extras["overflow"] <= overflow_threshold;
  return r;
}

inline void check_orthogonal(const Mat& u, double tol = 1e-12) {
  if (u.rows() != u.cols() || (u.transpose() * u - Mat::Identity(u.rows(), u.cols())).lpNorm<Eigen::Infinity>() > tol) throw GeometryError("transform is not orthogonal");
}

/// Invariance under orthogonal maps. For psi valuations an orientation
/// reversing map multiplies the value by (-1)^q; everything else is invariant.
/// Residual: max |phi(U P) - sign phi(P)| relative to the larger of |phi(P)|
/// and its absolute-integrand scale.
inline FitReport check_invariance(const ValuationDescriptor& desc, const Polytope& p, const std::vector<Mat>& transforms, double threshold = 1e-9) {
  for (const auto& u : transforms) check_orthogonal(u);
  const double base = evaluate(desc, p);
  double worst = 0.0;
  FitReport r;
  r.name = "invariance " + desc.name();
  for (const auto& u : transforms) {
    const bool reversing = u.determinant() < 0;
    const double sign = desc.kind == ValuationDescriptor::Kind::psi && reversing && desc.q % 2 == 1 ? -1.0 : 1.0;
    const double v = evaluate(desc, transformed(p, u, Vec::Zero(p.dim)));
    r.coefficients.push_back(v);
    worst = std::max(worst, std::abs(v - sign * base));
  }
  r.rows = transforms.size();
  r.extras["base_value"] = base;
  const double scale = std::max(std::abs(base), absolute_scale(desc, p));
  r.extras["scale"] = scale;
  r.relative_residual = scale > 0 ? worst / scale : worst;
  r.threshold = threshold;
  r.pass = r.relative_residual <= threshold;
  return r;
}

/// Degree law for translations: the fit at desc.degree() has residual below
/// `threshold`, and refitting one degree higher does not reduce it by more
/// than a factor 10 above a rounding floor of 1e-10 (extras: "refit_residual",
/// "gain").
inline FitReport check_degree_law(const ValuationDescriptor& desc, const Polytope& p, double threshold = 1e-8) {
  const TranslationFit fit = translation_polynomial(desc, p, desc.degree());
  FitReport r;
  r.name = "degree law " + desc.name();
  r.rows = fit.samples;
  r.cols = monomials_up_to(p.dim, fit.degree).size();
  for (const auto& [e, c] : fit.polynomial.terms()) {
    std::string label = "x";
    for (int k : e) label += std::to_string(k);
    r.labels.push_back(label);
    r.coefficients.push_back(c);
  }
  r.relative_residual = fit.relative_residual;
  r.condition = fit.condition;
  r.threshold = threshold;
  const double gain = fit.relative_residual / std::max(fit.refit_residual, 1e-10);
  r.extras["refit_residual"] = fit.refit_residual;
  r.extras["gain"] = gain;
  r.pass = fit.relative_residual <= threshold && gain <= 10.0;
  return r;
}

}  // namespace rotval

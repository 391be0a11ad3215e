#pragma once

#include "rotval/core/lstsq.hpp"
#include "rotval/core/parallel.hpp"
#include "rotval/core/report.hpp"
#include "rotval/intgeo/sections.hpp"
#include "rotval/valuations/evaluate.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace rotval {

enum class SectionKind { slice, project };

/// Monte Carlo estimates of the plane integral of the j-th eps-derivative of
/// ∫_{(M)_eps} |s|^2 dm_k, for all j = 0..k+3 at once; one row per body.
struct SectionEstimates {
  int k = 0;
  double radius = 0.0;
  std::size_t planes = 0;
  std::vector<std::vector<double>> mean;
  std::vector<std::vector<double>> standard_error;
};

/// Radius of the origin-centred ball containing every body.
inline double enclosing_radius(const std::vector<Polytope>& bodies) {
  double r = 0.0;
  for (const auto& b : bodies) {
    for (const auto& v : b.vertices) r = std::max(r, v.norm());
  }
  return r * (1.0 + 1e-9) + 1e-12;
}

/// Each body b gets its own plane stream with seed derive_seed(seed, b); its
/// planes are exactly sample_planes(d, k, R, n, derive_seed(seed, b), mode).
inline SectionEstimates section_estimates(const std::vector<Polytope>& bodies, int k, std::size_t n, std::uint64_t seed, SectionKind kind, int threads = 1, double radius = 0.0) {
  if (bodies.empty()) throw std::invalid_argument("section experiment: no bodies");
  const int d = bodies.front().dim;
  if (d < 2 || d > 3) throw std::invalid_argument("section experiment: dimension must be 2 or 3");
  if (k < 1 || k > d - 1) throw std::invalid_argument("section experiment: k must be in 1..d-1");
  if (n < 2) throw std::invalid_argument("section experiment: need at least two planes");
  SectionEstimates out;
  out.k = k;
  out.planes = n;
  out.radius = radius > 0 ? radius : enclosing_radius(bodies);
  const PlaneMode mode = kind == SectionKind::slice ? PlaneMode::affine : PlaneMode::linear;
  const double weight = mode == PlaneMode::affine ? ball_volume(d - k, out.radius) : 1.0;
  const int nj = k + 4;
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    if (bodies[b].dim != d) throw GeometryError("section experiment: mixed dimensions");
    const SectionBody body = prepare_section_body(bodies[b]);
    const std::uint64_t body_seed = derive_seed(seed, b);
    const std::size_t chunks = (n + detail::kPlaneChunk - 1) / detail::kPlaneChunk;
    std::vector<std::vector<double>> sums(chunks, std::vector<double>(2 * static_cast<std::size_t>(nj), 0.0));
    parallel_for(chunks, threads, [&](std::size_t c) {
      Rng rng = make_rng(body_seed, c);
      auto& acc = sums[c];
      const std::size_t end = std::min(n, (c + 1) * detail::kPlaneChunk);
      for (std::size_t i = c * detail::kPlaneChunk; i < end; ++i) {
        const auto plane = detail::draw_small_plane(rng, d, k, out.radius, mode);
        const auto coeffs = section_moment(body, plane, k, kind == SectionKind::project);
        for (int j = 0; j < nj; ++j) {
          const double v = weight * factorial(j) * coeffs[static_cast<std::size_t>(j)];
          acc[static_cast<std::size_t>(j)] += v;
          acc[static_cast<std::size_t>(nj + j)] += v * v;
        }
      }
    });
    std::vector<double> mean(static_cast<std::size_t>(nj)), se(static_cast<std::size_t>(nj));
    for (int j = 0; j < nj; ++j) {
      std::vector<double> s1(chunks), s2(chunks);
      for (std::size_t c = 0; c < chunks; ++c) {
        s1[c] = sums[c][static_cast<std::size_t>(j)];
        s2[c] = sums[c][static_cast<std::size_t>(nj + j)];
      }
      const double m = pairwise_sum(s1) / static_cast<double>(n);
      const double var = std::max(pairwise_sum(s2) / static_cast<double>(n) - m * m, 0.0) * static_cast<double>(n) / static_cast<double>(n - 1);
      mean[static_cast<std::size_t>(j)] = m;
      se[static_cast<std::size_t>(j)] = std::sqrt(var / static_cast<double>(n));
    }
    out.mean.push_back(mean);
    out.standard_error.push_back(se);
  }
  return out;
}

/// A named feature of a body.
struct Feature {
  std::string label;
  double value;
};

/// Right-hand side features of the affine-plane formula for (d, k, j):
/// the j-th eps-derivative of ∫_{K+eps B}|s|^2 when j <= k, and W_{j-2}
/// when 2 <= j <= k + 2. Empty for j > k + 2.
inline std::vector<Feature> crofton_features(const Polytope& body, int k, int j) {
  std::vector<Feature> f;
  if (j > k + 2) return f;
  if (j <= k) f.push_back({"d^" + std::to_string(j) + " moment(1)", steiner_coefficients(ValuationDescriptor::moment(1), body).derivative(j)});
  if (j >= 2) f.push_back({"W_" + std::to_string(j - 2), quermassintegrals(body)[static_cast<std::size_t>(j - 2)]});
  return f;
}

/// Features of the linear-plane formula: xi_{2,0}^{(d-1+j-k)} when the order
/// lies in 0..d-2, xi_{1,1}^{(d+j-k)} when it lies in 0..d, and
/// W_{d-2+j-k} when the index lies in 0..d.
inline std::vector<Feature> projection_features(const Polytope& body, int k, int j) {
  std::vector<Feature> f;
  const int d = body.dim;
  if (j > k + 2) return f;
  const int i20 = d - 1 + j - k, i11 = d + j - k, iw = d - 2 + j - k;
  if (i20 >= 0 && i20 <= d - 2) f.push_back({"xi(2,0)^(" + std::to_string(i20) + ")", steiner_coefficients(ValuationDescriptor::xi(2, 0), body).derivative(i20)});
  if (i11 >= 0 && i11 <= d) f.push_back({"xi(1,1)^(" + std::to_string(i11) + ")", steiner_coefficients(ValuationDescriptor::xi(1, 1), body).derivative(i11)});
  if (iw >= 0 && iw <= d) f.push_back({"W_" + std::to_string(iw), quermassintegrals(body)[static_cast<std::size_t>(iw)]});
  return f;
}

/// Weighted regression of per-body estimates onto features. Weights are
/// 1 / se^2 (with a rounding floor); verdict: ||residual|| <= 3 sqrt(sum se^2)
/// plus a rounding allowance of 1e-12 ||y||. Coefficient errors come from
/// the normal-equations covariance.
inline ExperimentReport regress_estimates(std::string name, const std::vector<double>& y, const std::vector<double>& se, const std::vector<std::vector<Feature>>& features) {
  ExperimentReport r;
  r.name = std::move(name);
  r.estimates = y;
  r.standard_errors = se;
  const std::size_t nb = y.size();
  const std::size_t nf = features.empty() ? 0 : features.front().size();
  for (std::size_t i = 0; i < nf; ++i) r.labels.push_back(features.front()[i].label);
  double ynorm = 0.0, var = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    ynorm += y[b] * y[b];
    var += se[b] * se[b];
  }
  ynorm = std::sqrt(ynorm);
  r.residual_bound = 3.0 * std::sqrt(var) + 1e-12 * ynorm;
  Vec resid = Eigen::Map<const Vec>(y.data(), static_cast<Eigen::Index>(nb));
  if (nf > 0) {
    if (nb < nf) throw FitError(r.name + ": fewer bodies than features");
    Mat f(static_cast<Eigen::Index>(nb), static_cast<Eigen::Index>(nf));
    Vec w(static_cast<Eigen::Index>(nb));
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t i = 0; i < nf; ++i) f(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(i)) = features[b][i].value;
      const double s = std::max(se[b], 1e-12 * std::abs(y[b]) + 1e-300);
      w[static_cast<Eigen::Index>(b)] = 1.0 / s;
    }
    const Mat fw = w.asDiagonal() * f;
    const Vec yw = w.cwiseProduct(resid);
    const LeastSquares ls = solve_least_squares(fw, yw);
    if (ls.rank < static_cast<int>(nf)) throw FitError(r.name + ": rank-deficient feature matrix");
    const Mat cov = (fw.transpose() * fw).inverse();
    r.coefficients.assign(ls.coefficients.data(), ls.coefficients.data() + nf);
    for (std::size_t i = 0; i < nf; ++i) r.coefficient_errors.push_back(std::sqrt(std::max(cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)), 0.0)));
    resid -= f * ls.coefficients;
    r.parameters["condition"] = ls.condition;
  }
  r.residuals.assign(resid.data(), resid.data() + resid.size());
  r.residual_norm = resid.norm();
  r.pass = r.residual_norm <= r.residual_bound;
  return r;
}

namespace detail {

inline std::vector<ExperimentReport> section_reports(const std::vector<Polytope>& bodies, int k, std::size_t n, std::uint64_t seed, SectionKind kind, int threads, const std::vector<int>& js) {
  const SectionEstimates est = section_estimates(bodies, k, n, seed, kind, threads);
  std::vector<ExperimentReport> out;
  for (int j : js) {
    if (j < 0 || j > k + 3) throw std::invalid_argument("section experiment: derivative order must lie in 0..k+3");
    std::vector<double> y, se;
    std::vector<std::vector<Feature>> feats;
    for (std::size_t b = 0; b < bodies.size(); ++b) {
      y.push_back(est.mean[b][static_cast<std::size_t>(j)]);
      se.push_back(est.standard_error[b][static_cast<std::size_t>(j)]);
      feats.push_back(kind == SectionKind::slice ? crofton_features(bodies[b], k, j) : projection_features(bodies[b], k, j));
    }
    const std::string name = std::string(kind == SectionKind::slice ? "crofton" : "projection") + " d=" + std::to_string(bodies.front().dim) + " k=" + std::to_string(k) + " j=" + std::to_string(j);
    ExperimentReport r = regress_estimates(name, y, se, feats);
    r.seed = seed;
    r.parameters["d"] = bodies.front().dim;
    r.parameters["k"] = k;
    r.parameters["j"] = j;
    r.parameters["planes"] = static_cast<double>(n);
    r.parameters["radius"] = est.radius;
    if (j > k + 2) {
      // the inner eps-polynomial has degree at most k + 2
      r.notes.push_back("inner polynomial degree exhausted: left-hand side is identically zero");
      r.pass = std::all_of(y.begin(), y.end(), [](double v) { return v == 0.0; });
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace detail

/// Affine-plane experiment for one (k, j).
inline ExperimentReport crofton_experiment(const std::vector<Polytope>& bodies, int k, int j, std::size_t n, std::uint64_t seed, int threads = 1) {
  return detail::section_reports(bodies, k, n, seed, SectionKind::slice, threads, {j}).front();
}

/// Linear-plane (projection) experiment for one (k, j).
inline ExperimentReport projection_experiment(const std::vector<Polytope>& bodies, int k, int j, std::size_t n, std::uint64_t seed, int threads = 1) {
  return detail::section_reports(bodies, k, n, seed, SectionKind::project, threads, {j}).front();
}

/// All orders j = 0..k+3 from one set of plane samples.
inline std::vector<ExperimentReport> section_experiments(const std::vector<Polytope>& bodies, int k, std::size_t n, std::uint64_t seed, SectionKind kind, int threads = 1) {
  std::vector<int> js;
  for (int j = 0; j <= k + 3; ++j) js.push_back(j);
  return detail::section_reports(bodies, k, n, seed, kind, threads, js);
}

/// Largest |c1 - c2| / sqrt(e1^2 + e2^2) over fitted constants of two runs.
inline double coefficient_discrepancy(const ExperimentReport& a, const ExperimentReport& b) {
  if (a.coefficients.size() != b.coefficients.size()) throw std::invalid_argument("coefficient_discrepancy: reports do not match");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.coefficients.size(); ++i) {
    const double s = std::sqrt(a.coefficient_errors[i] * a.coefficient_errors[i] + b.coefficient_errors[i] * b.coefficient_errors[i]);
    const double diff = std::abs(a.coefficients[i] - b.coefficients[i]);
    worst = std::max(worst, s > 0 ? diff / s : (diff > 1e-12 * std::max(1.0, std::abs(a.coefficients[i])) ? std::numeric_limits<double>::infinity() : 0.0));
  }
  return worst;
}

}  // namespace rotval

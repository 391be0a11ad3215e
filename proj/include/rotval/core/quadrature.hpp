#pragma once

#include "rotval/core/types.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <vector>

namespace rotval {

/// Nodes and weights of a one-dimensional rule on [0, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

namespace detail {

inline LineRule compute_gauss_legendre(int n) {
  LineRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton iteration on P_n starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // map [-1, 1] -> [0, 1]; nodes ascending
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (x + 1.0);
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = 0.5 * w;
  }
  return rule;
}

}  // namespace detail

/// n-point Gauss-Legendre rule on [0, 1]; exact for polynomials of degree 2n - 1.
/// Rules are cached and safe to request concurrently.
inline const LineRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<LineRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<LineRule>(detail::compute_gauss_legendre(n));
  return *slot;
}

/// Number of Gauss points needed to integrate a degree-`degree` polynomial exactly.
inline int gauss_points_for_degree(int degree) { return std::max(1, degree / 2 + 1); }

/// Point cloud with weights; points are the columns of `points`.
struct PointRule {
  Mat points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Collapsed (Duffy) Gauss product rule on the simplex spanned by `vertices`
/// (f + 1 points in R^d, 0 <= f <= d), exact for polynomials of total degree
/// `degree`. Weights include the simplex measure.
inline PointRule simplex_rule(const std::vector<Vec>& vertices, int degree) {
  if (vertices.empty()) throw GeometryError("simplex_rule: no vertices");
  const int f = static_cast<int>(vertices.size()) - 1;
  const Eigen::Index d = vertices.front().size();
  PointRule rule;
  if (f == 0) {
    rule.points = vertices.front();
    rule.weights = {1.0};
    return rule;
  }
  Mat edges(d, f);
  for (int i = 0; i < f; ++i) edges.col(i) = vertices[static_cast<std::size_t>(i + 1)] - vertices.front();
  const double gram = (edges.transpose() * edges).determinant();
  const double measure_scale = std::sqrt(std::max(gram, 0.0));  // = f! * vol_f
  const int n = std::max(1, (degree + f + 1) / 2 + 1);
  const LineRule& gl = gauss_legendre(n);
  std::size_t total = 1;
  for (int i = 0; i < f; ++i) total *= static_cast<std::size_t>(n);
  rule.points.resize(d, static_cast<Eigen::Index>(total));
  rule.weights.resize(total);
  std::vector<int> idx(static_cast<std::size_t>(f), 0);
  Vec t(f);
  for (std::size_t k = 0; k < total; ++k) {
    double remaining = 1.0;
    double weight = measure_scale;
    for (int i = 0; i < f; ++i) {
      const double xi = gl.nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      t[i] = remaining * xi;
      weight *= gl.weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] * std::pow(1.0 - xi, f - 1 - i);
      remaining *= 1.0 - xi;
    }
    rule.points.col(static_cast<Eigen::Index>(k)) = vertices.front() + edges * t;
    rule.weights[k] = weight;
    for (int i = f - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < n) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return rule;
}

/// Concatenates rules (same ambient dimension).
inline PointRule merge_rules(const std::vector<PointRule>& parts) {
  PointRule out;
  Eigen::Index cols = 0;
  Eigen::Index rows = 0;
  for (const auto& p : parts) {
    cols += p.points.cols();
    rows = std::max(rows, p.points.rows());
  }
  out.points.resize(rows, cols);
  Eigen::Index c = 0;
  for (const auto& p : parts) {
    out.points.middleCols(c, p.points.cols()) = p.points;
    c += p.points.cols();
    out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
  }
  return out;
}

/// table[m][n] = integral over [0, theta] of cos^m(t) sin^n(t) dt for m + n <= max_degree.
inline std::vector<std::vector<double>> trig_moment_table(int max_degree, double theta) {
  std::vector<std::vector<double>> table(static_cast<std::size_t>(max_degree + 1));
  for (int m = 0; m <= max_degree; ++m) table[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(max_degree - m + 1), 0.0);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  auto at = [&](int m, int n) -> double& { return table[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)]; };
  // n in {0, 1}: recurse in m
  for (int n = 0; n <= std::min(1, max_degree); ++n) {
    for (int m = 0; m + n <= max_degree; ++m) {
      if (m == 0 && n == 0) {
        at(0, 0) = theta;
      } else if (m == 1 && n == 0) {
        at(1, 0) = s;
      } else if (m == 0 && n == 1) {
        at(0, 1) = 1.0 - c;
      } else if (m == 1 && n == 1) {
        at(1, 1) = 0.5 * s * s;
      } else {
        at(m, n) = std::pow(c, m - 1) * std::pow(s, n + 1) / (m + n) + (m - 1.0) / (m + n) * at(m - 2, n);
      }
    }
  }
  for (int n = 2; n <= max_degree; ++n) {
    for (int m = 0; m + n <= max_degree; ++m) {
      at(m, n) = -std::pow(s, n - 1) * std::pow(c, m + 1) / (m + n) + (n - 1.0) / (m + n) * at(m, n - 2);
    }
  }
  return table;
}

}  // namespace rotval

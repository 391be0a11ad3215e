#pragma once

#include "rotval/core/lstsq.hpp"
#include "rotval/core/multipoly.hpp"
#include "rotval/core/polytope.hpp"
#include "rotval/core/random.hpp"
#include "rotval/intgeo/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace rotval {

/// Coefficient of λ1λ2λ3λ4 in ∫_{Σ λ_i K_i} |s|^2 ds, divided by 4! so that
/// the polynomial is Σ λ_{i1}..λ_{i4} P(K_{i1}, .., K_{i4}).
struct MixedCoefficientReport {
  std::vector<std::string> bodies;
  double coefficient = 0.0;
  bool segments = false;
  double closed_form = 0.0;
  double closed_form_error = 0.0;
  double identity_residual = 0.0;
  double fit_residual = 0.0;
  /// Every λ-monomial coefficient of the degree-4 fit.
  std::vector<Exponent> monomials;
  std::vector<double> lambda_coefficients;
  double min_lambda_coefficient = 0.0;
  bool nonnegative = false;
  bool pass = false;
};

namespace detail {

/// Vertices of a planar convex body in counterclockwise order starting from
/// the lowest (then leftmost) vertex; segments give two points.
inline std::vector<P2> ccw_vertices(const Polytope& k) {
  if (k.dim != 2) throw GeometryError("expected a planar body");
  std::vector<P2> pts;
  for (const auto& v : k.vertices) pts.push_back({v[0], v[1]});
  return hull_2d(std::move(pts), 1e-13);
}

/// Σ w_i K_i for planar convex polygons by merging edge vectors by angle.
inline std::vector<P2> planar_minkowski(const std::vector<std::vector<P2>>& polys, const std::vector<double>& w) {
  P2 start{0.0, 0.0};
  struct Edge {
    double angle;
    P2 v;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (w[i] == 0.0 || polys[i].empty()) continue;
    const auto& p = polys[i];
    std::size_t lo = 0;
    for (std::size_t k = 1; k < p.size(); ++k) {
      if (p[k][1] < p[lo][1] || (p[k][1] == p[lo][1] && p[k][0] < p[lo][0])) lo = k;
    }
    start[0] += w[i] * p[lo][0];
    start[1] += w[i] * p[lo][1];
    if (p.size() == 1) continue;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const P2& a = p[k];
      const P2& b = p[(k + 1) % p.size()];
      const P2 e{w[i] * (b[0] - a[0]), w[i] * (b[1] - a[1])};
      double ang = std::atan2(e[1], e[0]);
      if (ang < 0) ang += 2.0 * std::numbers::pi;
      // from the lowest-leftmost vertex the first edge has the smallest angle
      if (ang >= 2.0 * std::numbers::pi) ang = 0.0;
      edges.push_back({ang, e});
    }
  }
  std::stable_sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.angle < b.angle; });
  std::vector<P2> out{start};
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    out.push_back({out.back()[0] + edges[k].v[0], out.back()[1] + edges[k].v[1]});
  }
  return out;
}

/// ∫_P |s|^2 ds for a counterclockwise polygon (0 for lower-dimensional P).
inline double polygon_second_moment(const std::vector<P2>& v) {
  if (v.size() < 3) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const P2& p = v[i];
    const P2& q = v[(i + 1) % v.size()];
    s += (p[0] * q[1] - q[0] * p[1]) * (p[0] * p[0] + p[0] * q[0] + q[0] * q[0] + p[1] * p[1] + p[1] * q[1] + q[1] * q[1]);
  }
  return s / 12.0;
}

inline double wedge(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace detail

/// Residual of ⟨u1,u4⟩u2∧u3 − ⟨u2,u4⟩u1∧u3 − ⟨u1,u3⟩u2∧u4 + ⟨u2,u3⟩u1∧u4.
inline double vanishing_identity(const Vec& u1, const Vec& u2, const Vec& u3, const Vec& u4) {
  using detail::wedge;
  return u1.dot(u4) * wedge(u2, u3) - u2.dot(u4) * wedge(u1, u3) - u1.dot(u3) * wedge(u2, u4) + u2.dot(u3) * wedge(u1, u4);
}

/// Closed form for centred segments [-u_i, u_i]: directions are flipped into
/// the half-plane of angles [0, π), sorted counterclockwise, and
/// 3P = ⟨u3,u4⟩ u1∧u2 + ⟨u1,u2⟩ u3∧u4 in that order.
inline double segment_closed_form(std::vector<Vec> u) {
  if (u.size() != 4) throw std::invalid_argument("segment_closed_form: four directions required");
  std::vector<std::pair<double, Vec>> sorted;
  for (auto& v : u) {
    if (v.size() != 2) throw std::invalid_argument("segment_closed_form: planar vectors required");
    double ang = std::atan2(v[1], v[0]);
    if (ang < 0) {
      ang += std::numbers::pi;
      v = -v;
    }
    if (ang >= std::numbers::pi) {
      ang = 0.0;
      v = -v;
    }
    sorted.emplace_back(ang, v);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const Vec& a = sorted[0].second;
  const Vec& b = sorted[1].second;
  const Vec& c = sorted[2].second;
  const Vec& d = sorted[3].second;
  return (c.dot(d) * detail::wedge(a, b) + a.dot(b) * detail::wedge(c, d)) / 3.0;
}

/// Centred segment [-u, u] as a polytope.
inline Polytope centered_segment(const Vec& u) { return build_polytope({-u, u}, 2); }

/// If K is a segment symmetric about the origin, its half-direction u.
inline bool centered_segment_direction(const Polytope& k, Vec& u, double tol = 1e-12) {
  if (k.dim != 2 || k.vertices.size() != 2) return false;
  if ((k.vertices[0] + k.vertices[1]).norm() > tol * std::max(1.0, k.vertices[0].norm())) return false;
  u = k.vertices[1];
  return true;
}

/// Fits ∫_{Σλ_iK_i}|s|^2 on the 5^4 grid λ_i ∈ {0, 1/4, .., 1} by all
/// degree-4 monomials, and extracts the mixed coefficient.
inline MixedCoefficientReport mixed_moment(const std::vector<Polytope>& bodies, double fit_threshold = 1e-8, double nonneg_tol = 1e-9) {
  if (bodies.size() != 4) throw std::invalid_argument("mixed_moment: four bodies required");
  MixedCoefficientReport r;
  std::vector<std::vector<detail::P2>> polys;
  for (std::size_t i = 0; i < 4; ++i) {
    if (bodies[i].dim != 2) throw GeometryError("mixed_moment: bodies must be planar");
    if (bodies[i].empty()) throw GeometryError("mixed_moment: empty body");
    polys.push_back(detail::ccw_vertices(bodies[i]));
    r.bodies.push_back("K" + std::to_string(i + 1));
  }
  r.monomials = monomials_up_to(4, 4);
  std::vector<Exponent> top;
  for (const auto& e : r.monomials) {
    if (total_degree(e) == 4) top.push_back(e);
  }
  r.monomials = top;
  const std::size_t n = 625;
  Mat a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(top.size()));
  Vec y(static_cast<Eigen::Index>(n));
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::vector<double> lam(4);
    std::size_t rest = idx;
    for (int i = 0; i < 4; ++i) {
      lam[static_cast<std::size_t>(i)] = static_cast<double>(rest % 5) / 4.0;
      rest /= 5;
    }
    y[static_cast<Eigen::Index>(idx)] = detail::polygon_second_moment(detail::planar_minkowski(polys, lam));
    for (std::size_t m = 0; m < top.size(); ++m) {
      double v = 1.0;
      for (int i = 0; i < 4; ++i) v *= std::pow(lam[static_cast<std::size_t>(i)], top[m][static_cast<std::size_t>(i)]);
      a(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(m)) = v;
    }
  }
  // the integral is 4-homogeneous in λ, so only top-degree monomials enter
  const LeastSquares ls = solve_least_squares(a, y);
  r.fit_residual = ls.relative_residual;
  r.lambda_coefficients.assign(ls.coefficients.data(), ls.coefficients.data() + ls.coefficients.size());
  r.min_lambda_coefficient = *std::min_element(r.lambda_coefficients.begin(), r.lambda_coefficients.end());
  for (std::size_t m = 0; m < top.size(); ++m) {
    if (top[m] == Exponent{1, 1, 1, 1}) r.coefficient = r.lambda_coefficients[m] / 24.0;
  }
  r.nonnegative = r.min_lambda_coefficient >= -nonneg_tol;
  std::vector<Vec> u(4);
  r.segments = true;
  for (std::size_t i = 0; i < 4; ++i) r.segments = r.segments && centered_segment_direction(bodies[i], u[i]);
  if (r.segments) {
    r.closed_form = segment_closed_form(u);
    r.closed_form_error = std::abs(r.coefficient - r.closed_form);
    r.identity_residual = std::abs(vanishing_identity(u[0], u[1], u[2], u[3]));
  }
  r.pass = r.fit_residual <= fit_threshold && (!r.segments || r.closed_form_error <= 1e-8);
  return r;
}

/// Random centred segment with unit or random length.
inline Vec random_segment_direction(Rng& rng, bool unit) {
  std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi), len(0.2, 1.0);
  const double t = ang(rng);
  const double l = unit ? 1.0 : len(rng);
  return make_vec({l * std::cos(t), l * std::sin(t)});
}

/// Centrally symmetric zonotope: sum of `count` random centred segments,
/// each of half-length in [0.05, 0.3].
inline Polytope random_zonotope(Rng& rng, int count) {
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi), len(0.05, 0.3);
  std::vector<std::vector<detail::P2>> polys;
  for (int i = 0; i < count; ++i) {
    const double t = ang(rng), l = len(rng);
    polys.push_back({{-l * std::cos(t), -l * std::sin(t)}, {l * std::cos(t), l * std::sin(t)}});
  }
  const auto v = detail::planar_minkowski(polys, std::vector<double>(polys.size(), 1.0));
  std::vector<Vec> pts;
  for (const auto& p : v) pts.push_back(make_vec({p[0], p[1]}));
  return build_polytope(pts, 2);
}

}  // namespace rotval

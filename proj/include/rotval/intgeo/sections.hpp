#pragma once

#include "rotval/intgeo/planes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace rotval {

/// eps-coefficients c_0..c_5 of eps -> ∫_{M_eps} (|t|^2 + a) dt for a section
/// M of dimension k <= 2 (c_j = 0 beyond k + 2).
using SectionCoefficients = std::array<double, 6>;

namespace detail {

using P2 = std::array<double, 2>;

/// Interval [lo, hi]: ((hi + e)^3 - (lo - e)^3) / 3 + a (hi - lo + 2e).
inline SectionCoefficients interval_moment(double lo, double hi, double a) {
  return {(hi * hi * hi - lo * lo * lo) / 3.0 + a * (hi - lo), hi * hi + lo * lo + 2.0 * a, hi - lo, 2.0 / 3.0, 0.0};
}

/// Convex polygon given counterclockwise (a segment as two points, a point as
/// one). Core, edge strips and vertex sectors of the planar parallel body.
inline SectionCoefficients polygon_moment(const std::vector<P2>& v, double a) {
  SectionCoefficients c{};
  const std::size_t n = v.size();
  if (n == 0) return c;
  const double pi = std::numbers::pi;
  if (n == 1) {
    const double r2 = v[0][0] * v[0][0] + v[0][1] * v[0][1];
    return {0.0, 0.0, pi * (r2 + a), 0.0, pi / 2.0};
  }
  double area = 0.0, second = 0.0, perimeter = 0.0, angle = 0.0;
  std::vector<P2> normal(n);
  std::vector<double> length(n);
  for (std::size_t i = 0; i < n; ++i) {
    const P2& p = v[i];
    const P2& q = v[(i + 1) % n];
    const double cr = p[0] * q[1] - q[0] * p[1];
    area += cr / 2.0;
    second += cr * (p[0] * p[0] + p[0] * q[0] + q[0] * q[0] + p[1] * p[1] + p[1] * q[1] + q[1] * q[1]) / 12.0;
    const double ex = q[0] - p[0], ey = q[1] - p[1];
    const double len = std::hypot(ex, ey);
    length[i] = len;
    normal[i] = {ey / len, -ex / len};
    perimeter += len;
    const double pq = p[0] * p[0] + p[1] * p[1] + p[0] * q[0] + p[1] * q[1] + q[0] * q[0] + q[1] * q[1];
    c[1] += len * pq / 3.0;
    const double h = normal[i][0] * p[0] + normal[i][1] * p[1];
    c[2] += h * len;
    c[3] += len / 3.0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    // vertex i sits between edge i-1 and edge i
    const P2& m1 = normal[(i + n - 1) % n];
    const P2& m2 = normal[i];
    const double theta = std::atan2(std::abs(m1[0] * m2[1] - m1[1] * m2[0]), m1[0] * m2[0] + m1[1] * m2[1]);
    angle += theta;
    const P2 w1{-m1[1], m1[0]};
    const double s = std::sin(theta), oc = 1.0 - std::cos(theta);
    const P2& x = v[i];
    c[2] += theta * (x[0] * x[0] + x[1] * x[1]) / 2.0;
    c[3] += 2.0 / 3.0 * (x[0] * (s * m1[0] + oc * w1[0]) + x[1] * (s * m1[1] + oc * w1[1]));
  }
  c[0] = second + a * area;
  c[1] += a * perimeter;
  c[2] += a * angle / 2.0;
  c[4] = angle / 4.0;
  return c;
}

/// Andrew's monotone chain on small point sets; collinear points dropped.
inline std::vector<P2> hull_2d(std::vector<P2> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  std::vector<P2> uniq;
  for (const auto& p : pts) {
    if (uniq.empty() || std::abs(p[0] - uniq.back()[0]) > tol || std::abs(p[1] - uniq.back()[1]) > tol) uniq.push_back(p);
  }
  if (uniq.size() <= 2) return uniq;
  auto cross = [](const P2& o, const P2& a, const P2& b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); };
  std::vector<P2> h(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= tol * tol) --k;
    h[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = uniq.rbegin() + 1; it != uniq.rend(); ++it) {
    while (k >= lower && cross(h[k - 2], h[k - 1], *it) <= tol * tol) --k;
    h[k++] = *it;
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

/// Flat copy of a full-dimensional body (d = 2 or 3) for repeated sectioning.
struct SectionBody {
  int dim = 0;
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<double, 4>> facets;
  std::vector<std::array<int, 2>> edges;
};

inline SectionBody prepare_section_body(const Polytope& p) {
  if (p.dim < 2 || p.dim > 3) throw GeometryError("sections are implemented for dimensions 2 and 3");
  if (!p.full_dimensional()) throw GeometryError("sections require a full-dimensional body");
  SectionBody b;
  b.dim = p.dim;
  for (const auto& v : p.vertices) {
    std::array<double, 3> x{};
    for (int i = 0; i < p.dim; ++i) x[static_cast<std::size_t>(i)] = v[i];
    b.vertices.push_back(x);
  }
  for (const auto& f : p.facets) {
    std::array<double, 4> h{};
    for (int i = 0; i < p.dim; ++i) h[static_cast<std::size_t>(i)] = f.normal[i];
    h[3] = f.offset;
    b.facets.push_back(h);
  }
  b.edges = p.edges;
  return b;
}

namespace detail {

inline double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)];
  return s;
}

}  // namespace detail

/// eps-coefficients of ∫_{(M)_eps} |s|^2 dm_k for M = K ∩ E (slice) or
/// M = K|E (projection; the basepoint of the plane is ignored), with the
/// eps-extension taken inside E.
inline SectionCoefficients section_moment(const SectionBody& body, const detail::SmallPlane& plane, int k, bool project) {
  const int d = body.dim;
  const auto& q = plane.q;
  std::array<double, 3> z = project ? std::array<double, 3>{} : plane.z;
  const double a = detail::dot3(z, z, d);
  constexpr double tol = 1e-12;
  if (k == 1) {
    if (project) {
      double lo = std::numeric_limits<double>::infinity(), hi = -lo;
      for (const auto& v : body.vertices) {
        const double t = detail::dot3(v, q[0], d);
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      return detail::interval_moment(lo, hi, 0.0);
    }
    double lo = -std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& f : body.facets) {
      std::array<double, 3> n{f[0], f[1], f[2]};
      const double s = detail::dot3(n, q[0], d);
      const double r = f[3] - detail::dot3(n, z, d);
      if (std::abs(s) < 1e-15) {
        if (r < -tol) return {};
        continue;
      }
      if (s > 0) {
        hi = std::min(hi, r / s);
      } else {
        lo = std::max(lo, r / s);
      }
    }
    if (lo > hi + tol) return {};
    return detail::interval_moment(lo, std::max(lo, hi), a);
  }
  // k == 2, d == 3
  std::vector<detail::P2> pts;
  pts.reserve(body.vertices.size() + body.edges.size());
  auto to_plane = [&](const std::array<double, 3>& x) {
    const std::array<double, 3> y{x[0] - z[0], x[1] - z[1], x[2] - z[2]};
    return detail::P2{detail::dot3(y, q[0], 3), detail::dot3(y, q[1], 3)};
  };
  if (project) {
    for (const auto& v : body.vertices) pts.push_back(to_plane(v));
  } else {
    std::vector<double> delta(body.vertices.size());
    for (std::size_t i = 0; i < body.vertices.size(); ++i) {
      const auto& v = body.vertices[i];
      delta[i] = (v[0] - z[0]) * q[2][0] + (v[1] - z[1]) * q[2][1] + (v[2] - z[2]) * q[2][2];
      if (std::abs(delta[i]) <= tol) pts.push_back(to_plane(v));
    }
    for (const auto& e : body.edges) {
      const double da = delta[static_cast<std::size_t>(e[0])], db = delta[static_cast<std::size_t>(e[1])];
      if ((da < -tol && db > tol) || (da > tol && db < -tol)) {
        const double s = da / (da - db);
        const auto& va = body.vertices[static_cast<std::size_t>(e[0])];
        const auto& vb = body.vertices[static_cast<std::size_t>(e[1])];
        pts.push_back(to_plane({va[0] + s * (vb[0] - va[0]), va[1] + s * (vb[1] - va[1]), va[2] + s * (vb[2] - va[2])}));
      }
    }
    if (pts.empty()) return {};
  }
  return detail::polygon_moment(detail::hull_2d(std::move(pts), 1e-13), a);
}

}  // namespace rotval

#pragma once

#include "rotval/core/multipoly.hpp"
#include "rotval/core/polytope.hpp"
#include "rotval/core/quadrature.hpp"

#include <numbers>

namespace rotval {

/// A pointed polyhedral cone of outer normals, given by unit generators.
/// `region_dim` is the dimension of its trace on the unit sphere.
struct ConePiece {
  std::vector<Vec> rays;
  int region_dim = 0;
};

/// Normal cone of a face split into pointed pieces with disjoint interiors.
/// The cone is spanned by the normals of the relative facets containing the
/// face plus the full orthogonal complement of the affine hull; the latter is
/// split into coordinate orthants of the normal-space basis.
inline std::vector<ConePiece> normal_cone_pieces(const Polytope& p, const Face& face) {
  const int d = p.dim;
  const int r = d - 1 - face.dim;
  std::vector<ConePiece> out;
  if (r < 0) return out;
  std::vector<Vec> base;
  for (int f : face.facets) base.push_back(p.facets[static_cast<std::size_t>(f)].normal);
  const int c = static_cast<int>(p.normal_space.cols());
  for (int mask = 0; mask < (1 << c); ++mask) {
    ConePiece piece;
    piece.region_dim = r;
    piece.rays = base;
    for (int j = 0; j < c; ++j) piece.rays.push_back(((mask >> j) & 1 ? -1.0 : 1.0) * Vec(p.normal_space.col(j)));
    for (auto& v : piece.rays) v.normalize();
    out.push_back(std::move(piece));
  }
  return out;
}

namespace detail {

/// Coefficients a_n of prod_i (c*x_i + s*y_i)^{beta_i} = sum_n a_n c^{D-n} s^n.
inline std::vector<double> binary_form(const Exponent& beta, const Vec& x, const Vec& y) {
  std::vector<double> a{1.0};
  for (std::size_t i = 0; i < beta.size(); ++i) {
    for (int k = 0; k < beta[i]; ++k) {
      std::vector<double> next(a.size() + 1, 0.0);
      for (std::size_t n = 0; n < a.size(); ++n) {
        next[n] += a[n] * x[static_cast<Eigen::Index>(i)];
        next[n + 1] += a[n] * y[static_cast<Eigen::Index>(i)];
      }
      a = std::move(next);
    }
  }
  return a;
}

inline int max_degree(const std::vector<Exponent>& betas) {
  int m = 0;
  for (const auto& b : betas) m = std::max(m, total_degree(b));
  return m;
}

/// Extreme pair of a two-dimensional pointed cone.
inline std::pair<Vec, Vec> extreme_pair(const std::vector<Vec>& rays) {
  std::pair<Vec, Vec> best{rays[0], rays[1]};
  double lowest = 2.0;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i + 1; j < rays.size(); ++j) {
      const double c = rays[i].dot(rays[j]);
      if (c < lowest) {
        lowest = c;
        best = {rays[i], rays[j]};
      }
    }
  }
  return best;
}

/// Generators of a three-dimensional pointed cone in cyclic order.
inline std::vector<Vec> cyclic_order(const std::vector<Vec>& rays) {
  Vec center = Vec::Zero(3);
  for (const auto& r : rays) center += r;
  center.normalize();
  Vec e1 = rays[0] - rays[0].dot(center) * center;
  e1.normalize();
  const Eigen::Vector3d c3 = center, e13 = e1;
  const Vec e2 = c3.cross(e13);
  std::vector<std::pair<double, int>> ang;
  for (std::size_t i = 0; i < rays.size(); ++i) ang.emplace_back(std::atan2(rays[i].dot(e2), rays[i].dot(e1)), static_cast<int>(i));
  std::sort(ang.begin(), ang.end());
  std::vector<Vec> out;
  for (const auto& [a, i] : ang) out.push_back(rays[static_cast<std::size_t>(i)]);
  return out;
}

/// Polar frame of a spherical triangle about apex a: e1 points to b, e2 so
/// that c has positive azimuth; m is the inward-oriented normal of the great
/// circle through b and c (<a, m> < 0).
struct TriangleFrame {
  Vec apex, e1, e2, m;
  double azimuth;
};

inline TriangleFrame triangle_frame(const Vec& a, const Vec& b, const Vec& c) {
  TriangleFrame t;
  t.apex = a;
  t.e1 = b - b.dot(a) * a;
  t.e1.normalize();
  const Eigen::Vector3d a3 = a, e13 = t.e1;
  t.e2 = a3.cross(e13);
  if (c.dot(t.e2) < 0) t.e2 = -t.e2;
  t.azimuth = std::atan2(c.dot(t.e2), c.dot(t.e1));
  const Eigen::Vector3d b3 = b, c3 = c;
  t.m = b3.cross(c3);
  if (a.dot(t.m) > 0) t.m = -t.m;
  return t;
}

inline double polar_extent(const TriangleFrame& t, const Vec& dir) { return std::atan2(-t.apex.dot(t.m), dir.dot(t.m)); }

}  // namespace detail

/// Exact moments of u^beta along the great-circle arc from a to b (|a|=|b|=1,
/// angle < pi), with respect to arclength.
inline std::vector<double> arc_moments(const Vec& a, const Vec& b, const std::vector<Exponent>& betas) {
  const double cosang = std::clamp(a.dot(b), -1.0, 1.0);
  const double theta = std::acos(cosang);
  Vec w = b - cosang * a;
  const double wn = w.norm();
  std::vector<double> out(betas.size(), 0.0);
  if (wn < 1e-300) return out;
  w /= wn;
  const int deg = detail::max_degree(betas);
  const auto table = trig_moment_table(deg, theta);
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const auto coeff = detail::binary_form(betas[i], a, w);
    const int dgr = static_cast<int>(coeff.size()) - 1;
    double s = 0.0;
    for (int n = 0; n <= dgr; ++n) s += coeff[static_cast<std::size_t>(n)] * table[static_cast<std::size_t>(dgr - n)][static_cast<std::size_t>(n)];
    out[i] = s;
  }
  return out;
}

/// Moments of u^beta over a spherical triangle: the polar-angle integral is
/// exact, the azimuthal one uses composite Gauss-Legendre.
inline std::vector<double> triangle_moments(const Vec& a, const Vec& b, const Vec& c, const std::vector<Exponent>& betas) {
  // apex opposite the shortest side
  const double ab = a.dot(b), bc = b.dot(c), ca = c.dot(a);
  const Vec* v[3] = {&a, &b, &c};
  if (ab >= bc && ab >= ca) {
    v[0] = &c, v[1] = &a, v[2] = &b;
  } else if (ca >= bc && ca >= ab) {
    v[0] = &b, v[1] = &c, v[2] = &a;
  }
  const auto frame = detail::triangle_frame(*v[0], *v[1], *v[2]);
  const int deg = detail::max_degree(betas);
  const LineRule& gl = gauss_legendre(16 + deg);
  constexpr int kPanels = 4;
  std::vector<double> out(betas.size(), 0.0);
  for (int panel = 0; panel < kPanels; ++panel) {
    const double lo = frame.azimuth * panel / kPanels;
    const double width = frame.azimuth / kPanels;
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double psi = lo + width * gl.nodes[k];
      const Vec t = std::cos(psi) * frame.e1 + std::sin(psi) * frame.e2;
      const double theta_max = detail::polar_extent(frame, t);
      const auto table = trig_moment_table(deg + 1, theta_max);
      const double w = width * gl.weights[k];
      for (std::size_t i = 0; i < betas.size(); ++i) {
        const auto coeff = detail::binary_form(betas[i], frame.apex, t);
        const int dgr = static_cast<int>(coeff.size()) - 1;
        double s = 0.0;
        // area element sin(theta) d theta d psi
        for (int n = 0; n <= dgr; ++n) s += coeff[static_cast<std::size_t>(n)] * table[static_cast<std::size_t>(dgr - n)][static_cast<std::size_t>(n + 1)];
        out[i] += w * s;
      }
    }
  }
  return out;
}

/// Moments of u^beta over the spherical trace of a cone piece. A region of
/// dimension zero is a single direction and the moments are point values.
inline std::vector<double> cone_moments(const ConePiece& piece, const std::vector<Exponent>& betas) {
  std::vector<double> out(betas.size(), 0.0);
  if (piece.region_dim == 0) {
    for (std::size_t i = 0; i < betas.size(); ++i) out[i] = monomial_value(betas[i], piece.rays.front());
    return out;
  }
  if (piece.region_dim == 1) {
    const auto [a, b] = detail::extreme_pair(piece.rays);
    return arc_moments(a, b, betas);
  }
  if (piece.region_dim == 2) {
    const auto ordered = detail::cyclic_order(piece.rays);
    for (std::size_t i = 1; i + 1 < ordered.size(); ++i) {
      const auto part = triangle_moments(ordered[0], ordered[i], ordered[i + 1], betas);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] += part[j];
    }
    return out;
  }
  throw GeometryError("cone_moments: spherical regions above dimension two are not supported");
}

/// Quadrature nodes (columns) and weights on the spherical trace of a cone
/// piece, using tensor Gauss-Legendre rules in angular coordinates.
inline PointRule cone_rule(const ConePiece& piece, int order) {
  PointRule rule;
  const Eigen::Index d = piece.rays.front().size();
  if (piece.region_dim == 0) {
    rule.points = piece.rays.front();
    rule.weights = {1.0};
    return rule;
  }
  const LineRule& gl = gauss_legendre(order);
  if (piece.region_dim == 1) {
    const auto [a, b] = detail::extreme_pair(piece.rays);
    const double cosang = std::clamp(a.dot(b), -1.0, 1.0);
    const double theta = std::acos(cosang);
    Vec w = b - cosang * a;
    w.normalize();
    rule.points.resize(d, static_cast<Eigen::Index>(gl.nodes.size()));
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double t = theta * gl.nodes[k];
      rule.points.col(static_cast<Eigen::Index>(k)) = std::cos(t) * a + std::sin(t) * w;
      rule.weights.push_back(theta * gl.weights[k]);
    }
    return rule;
  }
  if (piece.region_dim != 2) throw GeometryError("cone_rule: spherical regions above dimension two are not supported");
  const auto ordered = detail::cyclic_order(piece.rays);
  std::vector<Vec> pts;
  for (std::size_t i = 1; i + 1 < ordered.size(); ++i) {
    const auto frame = detail::triangle_frame(ordered[0], ordered[i], ordered[i + 1]);
    for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
      const double psi = frame.azimuth * gl.nodes[k];
      const Vec t = std::cos(psi) * frame.e1 + std::sin(psi) * frame.e2;
      const double tmax = detail::polar_extent(frame, t);
      for (std::size_t l = 0; l < gl.nodes.size(); ++l) {
        const double th = tmax * gl.nodes[l];
        pts.push_back(std::cos(th) * frame.apex + std::sin(th) * t);
        rule.weights.push_back(frame.azimuth * gl.weights[k] * tmax * gl.weights[l] * std::sin(th));
      }
    }
  }
  rule.points.resize(d, static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) rule.points.col(static_cast<Eigen::Index>(i)) = pts[i];
  return rule;
}

}  // namespace rotval

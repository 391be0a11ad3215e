#pragma once

#include "rotval/core/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <limits>
#include <numeric>
#include <set>
#include <vector>

namespace rotval {

/// H = {x : <x, normal> = offset}.
struct Hyperplane {
  Vec normal;
  double offset = 0.0;
};

inline Hyperplane make_hyperplane(const Vec& normal, double offset, double tol = 1e-12) {
  if (std::abs(normal.norm() - 1.0) > tol) throw GeometryError("hyperplane normal must have unit length");
  return Hyperplane{normal, offset};
}

/// A relative facet: normal lies in the affine hull's direction space.
struct Facet {
  Vec normal;
  double offset = 0.0;
  std::vector<int> vertices;
  /// (k-1)-simplices covering the facet, as vertex indices of the polytope.
  std::vector<std::vector<int>> simplices;
};

/// Convex hull of finitely many points in R^dim, possibly lower dimensional.
/// `basis` spans the direction space of the affine hull, `normal_space` its
/// orthogonal complement; both have orthonormal columns.
struct Polytope {
  int dim = 0;
  int intrinsic_dim = -1;
  std::vector<Vec> vertices;
  Vec origin;
  Mat basis;
  Mat normal_space;
  std::vector<Facet> facets;
  std::vector<std::vector<int>> triangulation;
  std::vector<std::array<int, 2>> edges;

  bool empty() const { return vertices.empty(); }
  bool full_dimensional() const { return !empty() && intrinsic_dim == dim; }
};

inline Polytope empty_polytope(int dim) {
  Polytope p;
  p.dim = dim;
  p.origin = Vec::Zero(dim);
  p.basis = Mat::Zero(dim, 0);
  p.normal_space = Mat::Identity(dim, dim);
  return p;
}

namespace detail {

inline int matrix_rank(const Mat& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > tol) ++r;
  }
  return r;
}

struct IntrinsicFacet {
  Vec normal;
  double offset;
  std::vector<int> points;
};

/// Unit normal to the hyperplane through k points in R^k (zero vector if degenerate).
inline Vec hyperplane_normal(const std::vector<const Vec*>& pts) {
  const Eigen::Index k = pts.front()->size();
  Mat diff(k - 1, k);
  for (Eigen::Index i = 1; i < k; ++i) diff.row(i - 1) = (*pts[static_cast<std::size_t>(i)] - *pts[0]).transpose();
  Vec n(k);
  if (k == 2) {
    n << -diff(0, 1), diff(0, 0);
  } else if (k == 3) {
    const Eigen::Vector3d a = diff.row(0).transpose();
    const Eigen::Vector3d b = diff.row(1).transpose();
    n = a.cross(b);
  } else {
    // cofactor expansion: n_i = (-1)^i det(diff without column i)
    for (Eigen::Index i = 0; i < k; ++i) {
      Mat minor(k - 1, k - 1);
      Eigen::Index c = 0;
      for (Eigen::Index j = 0; j < k; ++j) {
        if (j == i) continue;
        minor.col(c++) = diff.col(j);
      }
      n[i] = ((i % 2) ? -1.0 : 1.0) * minor.determinant();
    }
  }
  return n;
}

/// Brute-force facet enumeration over k-subsets of the points (k >= 3).
inline std::vector<IntrinsicFacet> brute_force_facets(const std::vector<Vec>& y, double tol) {
  const int n = static_cast<int>(y.size());
  const int k = static_cast<int>(y.front().size());
  std::vector<IntrinsicFacet> out;
  std::set<std::vector<int>> seen;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<const Vec*> pts(static_cast<std::size_t>(k));
  double scale = 1.0;
  for (const auto& p : y) scale = std::max(scale, p.norm());
  while (true) {
    for (int i = 0; i < k; ++i) pts[static_cast<std::size_t>(i)] = &y[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    Vec normal = hyperplane_normal(pts);
    const double len = normal.norm();
    if (len > tol * scale) {
      normal /= len;
      const double h = normal.dot(*pts[0]);
      bool above = false;
      bool below = false;
      for (int j = 0; j < n && !(above && below); ++j) {
        const double s = normal.dot(y[static_cast<std::size_t>(j)]) - h;
        if (s > tol * scale) above = true;
        if (s < -tol * scale) below = true;
      }
      if (!(above && below)) {
        if (above) normal = -normal;
        const double offset = normal.dot(*pts[0]);
        std::vector<int> on;
        for (int j = 0; j < n; ++j) {
          if (std::abs(normal.dot(y[static_cast<std::size_t>(j)]) - offset) <= tol * scale) on.push_back(j);
        }
        if (seen.insert(on).second) out.push_back(IntrinsicFacet{normal, offset, on});
      }
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

/// Incremental hull of points spanning R^3. Triangles are kept outward
/// oriented; coplanar triangles are merged into facets at the end and every
/// input point on a facet plane is recorded, as in the brute-force path.
inline std::vector<IntrinsicFacet> incremental_facets_3d(const std::vector<Vec>& y, double tol) {
  const int n = static_cast<int>(y.size());
  double scale = 1.0;
  for (const auto& p : y) scale = std::max(scale, p.norm());
  const double eps = tol * scale;
  auto pt = [&](int i) -> Eigen::Vector3d { return y[static_cast<std::size_t>(i)]; };
  // initial tetrahedron from extreme points
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (y[static_cast<std::size_t>(i)][0] < y[static_cast<std::size_t>(i0)][0]) i0 = i;
  }
  int i1 = i0;
  double best = -1;
  for (int i = 0; i < n; ++i) {
    const double dd = (pt(i) - pt(i0)).norm();
    if (dd > best) best = dd, i1 = i;
  }
  int i2 = i0;
  best = -1;
  const Eigen::Vector3d dir = (pt(i1) - pt(i0)).normalized();
  for (int i = 0; i < n; ++i) {
    const double dd = (pt(i) - pt(i0)).cross(dir).norm();
    if (dd > best) best = dd, i2 = i;
  }
  int i3 = i0;
  best = -1;
  const Eigen::Vector3d pn = (pt(i1) - pt(i0)).cross(pt(i2) - pt(i0)).normalized();
  for (int i = 0; i < n; ++i) {
    const double dd = std::abs((pt(i) - pt(i0)).dot(pn));
    if (dd > best) best = dd, i3 = i;
  }
  struct Tri {
    std::array<int, 3> v;
    Eigen::Vector3d normal;
    double offset;
  };
  auto make_tri = [&](int a, int b, int c) {
    Tri t{{a, b, c}, (pt(b) - pt(a)).cross(pt(c) - pt(a)), 0.0};
    t.normal.normalize();
    t.offset = t.normal.dot(pt(a));
    return t;
  };
  std::vector<Tri> tris;
  const Eigen::Vector3d inner = (pt(i0) + pt(i1) + pt(i2) + pt(i3)) / 4.0;
  for (auto f : {std::array<int, 3>{i0, i1, i2}, std::array<int, 3>{i0, i1, i3}, std::array<int, 3>{i0, i2, i3}, std::array<int, 3>{i1, i2, i3}}) {
    Tri t = make_tri(f[0], f[1], f[2]);
    if (t.normal.dot(inner) > t.offset) t = make_tri(f[0], f[2], f[1]);
    tris.push_back(t);
  }
  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    const Eigen::Vector3d x = pt(p);
    std::vector<char> visible(tris.size(), 0);
    bool any = false;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (tris[t].normal.dot(x) - tris[t].offset > eps) visible[t] = 1, any = true;
    }
    if (!any) continue;
    std::set<std::pair<int, int>> vis_edges;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) continue;
      const auto& v = tris[t].v;
      for (int e = 0; e < 3; ++e) vis_edges.emplace(v[static_cast<std::size_t>(e)], v[static_cast<std::size_t>((e + 1) % 3)]);
    }
    std::vector<Tri> next;
    for (std::size_t t = 0; t < tris.size(); ++t) {
      if (!visible[t]) next.push_back(tris[t]);
    }
    for (const auto& [a, b] : vis_edges) {
      if (!vis_edges.count({b, a})) next.push_back(make_tri(a, b, p));
    }
    tris = std::move(next);
  }
  // merge coplanar triangles
  std::vector<IntrinsicFacet> out;
  std::vector<std::pair<Eigen::Vector3d, double>> planes;
  for (const auto& t : tris) {
    bool merged = false;
    for (const auto& [nrm, off] : planes) {
      if ((nrm - t.normal).norm() <= 1e-9 && std::abs(off - t.offset) <= eps) {
        merged = true;
        break;
      }
    }
    if (merged) continue;
    planes.emplace_back(t.normal, t.offset);
    std::vector<int> on;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t.normal.dot(pt(j)) - t.offset) <= eps) on.push_back(j);
    }
    out.push_back(IntrinsicFacet{Vec(t.normal), t.offset, on});
  }
  return out;
}

/// Andrew's monotone chain; returns hull indices in counterclockwise order.
inline std::vector<int> monotone_chain(const std::vector<Vec>& y, double tol) {
  std::vector<int> order(y.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& pa = y[static_cast<std::size_t>(a)];
    const auto& pb = y[static_cast<std::size_t>(b)];
    return pa[0] < pb[0] || (pa[0] == pb[0] && pa[1] < pb[1]);
  });
  auto cross = [&](int o, int a, int b) {
    const auto& po = y[static_cast<std::size_t>(o)];
    const auto& pa = y[static_cast<std::size_t>(a)];
    const auto& pb = y[static_cast<std::size_t>(b)];
    const double ax = pa[0] - po[0], ay = pa[1] - po[1];
    const double bx = pb[0] - po[0], by = pb[1] - po[1];
    return (ax * by - ay * bx) / std::max(std::hypot(ax, ay), 1e-300);
  };
  std::vector<int> hull(2 * order.size());
  std::size_t k = 0;
  for (int i : order) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], i) <= tol) --k;
    hull[k++] = i;
  }
  const std::size_t lower = k + 1;
  for (auto it = order.rbegin() + 1; it != order.rend(); ++it) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], *it) <= tol) --k;
    hull[k++] = *it;
  }
  hull.resize(k > 1 ? k - 1 : k);
  return hull;
}

}  // namespace detail

inline Polytope build_polytope(const std::vector<Vec>& points, int dim, double tol = 1e-10);

namespace detail {

/// Orders the vertices of a planar convex polygon embedded in R^d and fans it.
inline std::vector<std::vector<int>> fan_planar_polygon(const std::vector<Vec>& all, const std::vector<int>& ids) {
  if (ids.size() < 3) return {};
  Vec c = Vec::Zero(all.front().size());
  for (int i : ids) c += all[static_cast<std::size_t>(i)];
  c /= static_cast<double>(ids.size());
  Vec e1 = all[static_cast<std::size_t>(ids[0])] - c;
  e1.normalize();
  // second in-plane direction: the component of another vertex orthogonal to e1 with largest norm
  Vec e2 = Vec::Zero(c.size());
  for (int i : ids) {
    Vec w = all[static_cast<std::size_t>(i)] - c;
    w -= w.dot(e1) * e1;
    if (w.norm() > e2.norm()) e2 = w;
  }
  e2.normalize();
  std::vector<std::pair<double, int>> ang;
  for (int i : ids) {
    const Vec w = all[static_cast<std::size_t>(i)] - c;
    ang.emplace_back(std::atan2(w.dot(e2), w.dot(e1)), i);
  }
  std::sort(ang.begin(), ang.end());
  std::vector<std::vector<int>> tris;
  for (std::size_t i = 1; i + 1 < ang.size(); ++i) tris.push_back({ang[0].second, ang[i].second, ang[i + 1].second});
  return tris;
}

}  // namespace detail

inline Polytope build_polytope(const std::vector<Vec>& points, int dim, double tol) {
  if (points.empty()) throw GeometryError("build_polytope: empty point set");
  if (dim < 1 || dim > 4) throw GeometryError("build_polytope: dimension must be in 1..4");
  for (const auto& p : points) {
    if (p.size() != dim) throw GeometryError("build_polytope: coordinate length mismatch");
    if (!p.allFinite()) throw GeometryError("build_polytope: non-finite coordinate");
  }
  // deduplicate
  std::vector<Vec> pts;
  for (const auto& p : points) {
    bool dup = false;
    for (const auto& q : pts) {
      if ((p - q).lpNorm<Eigen::Infinity>() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) pts.push_back(p);
  }
  const int n = static_cast<int>(pts.size());
  Polytope poly;
  poly.dim = dim;
  Vec centroid = Vec::Zero(dim);
  for (const auto& p : pts) centroid += p;
  centroid /= n;
  Mat centered(dim, n);
  for (int i = 0; i < n; ++i) centered.col(i) = pts[static_cast<std::size_t>(i)] - centroid;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) scale = std::max(scale, centered.col(i).norm());
  Eigen::JacobiSVD<Mat> svd(centered, Eigen::ComputeFullU);
  int k = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()[i] > tol * scale) ++k;
  }
  poly.intrinsic_dim = k;
  poly.origin = centroid;
  poly.basis = svd.matrixU().leftCols(k);
  poly.normal_space = svd.matrixU().rightCols(dim - k);

  if (k == 0) {
    poly.vertices = {pts.front()};
    poly.triangulation = {{0}};
    return poly;
  }
  std::vector<Vec> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = poly.basis.transpose() * centered.col(i);

  std::vector<detail::IntrinsicFacet> ifacets;
  std::vector<int> hull_ids;
  if (k == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < n; ++i) {
      if (y[static_cast<std::size_t>(i)][0] < y[static_cast<std::size_t>(lo)][0]) lo = i;
      if (y[static_cast<std::size_t>(i)][0] > y[static_cast<std::size_t>(hi)][0]) hi = i;
    }
    hull_ids = {lo, hi};
    ifacets.push_back({make_vec({-1.0}), -y[static_cast<std::size_t>(lo)][0], {lo}});
    ifacets.push_back({make_vec({1.0}), y[static_cast<std::size_t>(hi)][0], {hi}});
  } else if (k == 2) {
    hull_ids = detail::monotone_chain(y, tol);
    const std::size_t m = hull_ids.size();
    for (std::size_t i = 0; i < m; ++i) {
      const int a = hull_ids[i];
      const int b = hull_ids[(i + 1) % m];
      const Vec e = y[static_cast<std::size_t>(b)] - y[static_cast<std::size_t>(a)];
      Vec nrm = make_vec({e[1], -e[0]});
      nrm.normalize();
      ifacets.push_back({nrm, nrm.dot(y[static_cast<std::size_t>(a)]), {a, b}});
    }
  } else {
    ifacets = k == 3 ? detail::incremental_facets_3d(y, tol) : detail::brute_force_facets(y, tol);
    for (int i = 0; i < n; ++i) {
      std::vector<int> incident;
      for (std::size_t f = 0; f < ifacets.size(); ++f) {
        const auto& on = ifacets[f].points;
        if (std::binary_search(on.begin(), on.end(), i)) incident.push_back(static_cast<int>(f));
      }
      Mat normals(k, static_cast<Eigen::Index>(incident.size()));
      for (std::size_t j = 0; j < incident.size(); ++j) normals.col(static_cast<Eigen::Index>(j)) = ifacets[static_cast<std::size_t>(incident[j])].normal;
      if (detail::matrix_rank(normals, 1e-9) == k) hull_ids.push_back(i);
    }
  }

  // renumber hull vertices
  std::vector<int> new_index(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < hull_ids.size(); ++i) {
    new_index[static_cast<std::size_t>(hull_ids[i])] = static_cast<int>(i);
    poly.vertices.push_back(pts[static_cast<std::size_t>(hull_ids[i])]);
  }
  for (const auto& f : ifacets) {
    Facet facet;
    facet.normal = poly.basis * f.normal;
    facet.offset = f.offset + facet.normal.dot(centroid);
    for (int p : f.points) {
      if (new_index[static_cast<std::size_t>(p)] >= 0) facet.vertices.push_back(new_index[static_cast<std::size_t>(p)]);
    }
    if (k >= 3) std::sort(facet.vertices.begin(), facet.vertices.end());
    poly.facets.push_back(std::move(facet));
  }

  // facet simplices
  for (auto& facet : poly.facets) {
    if (k <= 2) {
      facet.simplices = {facet.vertices};
    } else if (k == 3) {
      facet.simplices = detail::fan_planar_polygon(poly.vertices, facet.vertices);
    } else {
      std::vector<Vec> fp;
      for (int v : facet.vertices) fp.push_back(poly.vertices[static_cast<std::size_t>(v)]);
      const Polytope sub = build_polytope(fp, dim, tol);
      for (const auto& s : sub.triangulation) {
        std::vector<int> mapped;
        for (int v : s) {
          for (int w : facet.vertices) {
            if ((poly.vertices[static_cast<std::size_t>(w)] - sub.vertices[static_cast<std::size_t>(v)]).lpNorm<Eigen::Infinity>() <= tol) {
              mapped.push_back(w);
              break;
            }
          }
        }
        facet.simplices.push_back(mapped);
      }
    }
  }

  // triangulation: pull from vertex 0
  if (k == 1) {
    poly.triangulation = {{0, 1}};
  } else {
    for (const auto& facet : poly.facets) {
      if (std::find(facet.vertices.begin(), facet.vertices.end(), 0) != facet.vertices.end()) continue;
      for (const auto& s : facet.simplices) {
        std::vector<int> simplex{0};
        simplex.insert(simplex.end(), s.begin(), s.end());
        poly.triangulation.push_back(simplex);
      }
    }
  }

  // edges
  const int nv = static_cast<int>(poly.vertices.size());
  if (k == 1) {
    poly.edges = {{0, 1}};
  } else if (k == 2) {
    for (int i = 0; i < nv; ++i) poly.edges.push_back({i, (i + 1) % nv});
  } else {
    for (int a = 0; a < nv; ++a) {
      for (int b = a + 1; b < nv; ++b) {
        std::vector<const Facet*> common;
        for (const auto& f : poly.facets) {
          if (std::binary_search(f.vertices.begin(), f.vertices.end(), a) && std::binary_search(f.vertices.begin(), f.vertices.end(), b)) common.push_back(&f);
        }
        if (static_cast<int>(common.size()) < k - 1) continue;
        Mat normals(dim, static_cast<Eigen::Index>(common.size()));
        for (std::size_t j = 0; j < common.size(); ++j) normals.col(static_cast<Eigen::Index>(j)) = common[j]->normal;
        if (detail::matrix_rank(normals, 1e-9) == k - 1) poly.edges.push_back({a, b});
      }
    }
  }
  return poly;
}

/// k-dimensional measure of a simplex given by k + 1 points in R^d.
inline double simplex_measure(const std::vector<Vec>& pts) {
  const int f = static_cast<int>(pts.size()) - 1;
  if (f <= 0) return 1.0;
  Mat e(pts.front().size(), f);
  for (int i = 0; i < f; ++i) e.col(i) = pts[static_cast<std::size_t>(i + 1)] - pts.front();
  double g = (e.transpose() * e).determinant();
  return std::sqrt(std::max(g, 0.0)) / factorial(f);
}

inline std::vector<Vec> simplex_points(const Polytope& p, const std::vector<int>& ids) {
  std::vector<Vec> out;
  out.reserve(ids.size());
  for (int i : ids) out.push_back(p.vertices[static_cast<std::size_t>(i)]);
  return out;
}

/// Measure of the polytope in its own affine hull (points have measure 1, empty 0).
inline double relative_volume(const Polytope& p) {
  if (p.empty()) return 0.0;
  double v = 0.0;
  for (const auto& s : p.triangulation) v += simplex_measure(simplex_points(p, s));
  return v;
}

/// Lebesgue measure in R^dim (zero for lower-dimensional bodies).
inline double volume(const Polytope& p) { return p.full_dimensional() ? relative_volume(p) : 0.0; }

/// (k-1)-dimensional measure of a relative facet.
inline double facet_measure(const Polytope& p, const Facet& f) {
  double a = 0.0;
  for (const auto& s : f.simplices) a += simplex_measure(simplex_points(p, s));
  return a;
}

inline double support_value(const Polytope& p, const Vec& u) {
  double h = -std::numeric_limits<double>::infinity();
  for (const auto& v : p.vertices) h = std::max(h, v.dot(u));
  return h;
}

inline Vec vertex_centroid(const Polytope& p) {
  Vec c = Vec::Zero(p.dim);
  for (const auto& v : p.vertices) c += v;
  return p.vertices.empty() ? c : Vec(c / static_cast<double>(p.vertices.size()));
}

inline double circumradius(const Polytope& p, const Vec& center) {
  double r = 0.0;
  for (const auto& v : p.vertices) r = std::max(r, (v - center).norm());
  return r;
}

inline Polytope transformed(const Polytope& p, const Mat& linear, const Vec& shift, double tol = 1e-10) {
  if (p.empty()) return empty_polytope(p.dim);
  std::vector<Vec> pts;
  for (const auto& v : p.vertices) pts.push_back(linear * v + shift);
  return build_polytope(pts, p.dim, tol);
}

/// K + shift. Combinatorics are unchanged, so only coordinates and offsets move.
inline Polytope translated(const Polytope& p, const Vec& shift) {
  if (shift.size() != p.dim) throw GeometryError("translation length mismatch");
  Polytope out = p;
  if (out.empty()) return out;
  for (auto& v : out.vertices) v += shift;
  out.origin += shift;
  for (auto& f : out.facets) f.offset += f.normal.dot(shift);
  return out;
}

inline Polytope scaled(const Polytope& p, double factor) {
  if (!(factor > 0) || p.empty()) return transformed(p, factor * Mat::Identity(p.dim, p.dim), Vec::Zero(p.dim));
  Polytope out = p;
  for (auto& v : out.vertices) v *= factor;
  out.origin *= factor;
  for (auto& f : out.facets) f.offset *= factor;
  return out;
}

/// True iff x lies in p within tol (relative facets plus affine-hull membership).
inline bool contains_point(const Polytope& p, const Vec& x, double tol = 1e-9) {
  if (p.empty()) return false;
  if (p.normal_space.cols() > 0 && (p.normal_space.transpose() * (x - p.origin)).lpNorm<Eigen::Infinity>() > tol) return false;
  if (p.intrinsic_dim == 0) return (x - p.vertices.front()).norm() <= tol;
  for (const auto& f : p.facets) {
    if (x.dot(f.normal) > f.offset + tol) return false;
  }
  return true;
}

/// A face of the polytope: its vertex set, dimension, and the relative facets containing it.
struct Face {
  std::vector<int> vertices;
  int dim = 0;
  std::vector<int> facets;
};

/// Every nonempty face including the polytope itself (listed last).
inline std::vector<Face> faces(const Polytope& p) {
  std::vector<Face> out;
  if (p.empty()) return out;
  const int k = p.intrinsic_dim;
  std::set<std::vector<int>> sets;
  std::vector<std::vector<int>> frontier;
  for (const auto& f : p.facets) {
    if (sets.insert(f.vertices).second) frontier.push_back(f.vertices);
  }
  if (k >= 2) {
    std::vector<std::vector<int>> facet_sets;
    for (const auto& f : p.facets) {
      auto s = f.vertices;
      std::sort(s.begin(), s.end());
      facet_sets.push_back(s);
    }
    // close under intersection with facets
    std::vector<std::vector<int>> sorted_frontier;
    for (auto s : frontier) {
      std::sort(s.begin(), s.end());
      sorted_frontier.push_back(s);
    }
    sets.clear();
    for (const auto& s : sorted_frontier) sets.insert(s);
    frontier = sorted_frontier;
    while (!frontier.empty()) {
      std::vector<std::vector<int>> next;
      for (const auto& s : frontier) {
        for (const auto& f : facet_sets) {
          std::vector<int> inter;
          std::set_intersection(s.begin(), s.end(), f.begin(), f.end(), std::back_inserter(inter));
          if (!inter.empty() && sets.insert(inter).second) next.push_back(inter);
        }
      }
      frontier = std::move(next);
    }
  }
  for (const auto& s : sets) {
    Face face;
    face.vertices = s;
    if (s.size() > 1) {
      Mat d(p.dim, static_cast<Eigen::Index>(s.size() - 1));
      for (std::size_t i = 1; i < s.size(); ++i) d.col(static_cast<Eigen::Index>(i - 1)) = p.vertices[static_cast<std::size_t>(s[i])] - p.vertices[static_cast<std::size_t>(s[0])];
      face.dim = detail::matrix_rank(d, 1e-9 * std::max(1.0, d.norm()));
    }
    for (std::size_t fi = 0; fi < p.facets.size(); ++fi) {
      auto fv = p.facets[fi].vertices;
      std::sort(fv.begin(), fv.end());
      if (std::includes(fv.begin(), fv.end(), s.begin(), s.end())) face.facets.push_back(static_cast<int>(fi));
    }
    out.push_back(std::move(face));
  }
  std::stable_sort(out.begin(), out.end(), [](const Face& a, const Face& b) { return a.dim < b.dim; });
  Face whole;
  whole.vertices.resize(p.vertices.size());
  std::iota(whole.vertices.begin(), whole.vertices.end(), 0);
  whole.dim = k;
  out.push_back(std::move(whole));
  return out;
}

}  // namespace rotval

#pragma once

#include "rotval/core/polytope.hpp"

#include <optional>

namespace rotval {

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q, double tol = 1e-10) {
  if (p.dim != q.dim) throw GeometryError("minkowski_sum: dimension mismatch");
  if (p.empty() || q.empty()) return empty_polytope(p.dim);
  std::vector<Vec> pts;
  pts.reserve(p.vertices.size() * q.vertices.size());
  for (const auto& a : p.vertices) {
    for (const auto& b : q.vertices) pts.push_back(a + b);
  }
  return build_polytope(pts, p.dim, tol);
}

/// Minkowski combination sum_i weights[i] * bodies[i].
inline Polytope minkowski_combination(const std::vector<Polytope>& bodies, const std::vector<double>& weights, double tol = 1e-10) {
  if (bodies.empty() || bodies.size() != weights.size()) throw GeometryError("minkowski_combination: size mismatch");
  Polytope acc = scaled(bodies.front(), weights.front());
  for (std::size_t i = 1; i < bodies.size(); ++i) acc = minkowski_sum(acc, scaled(bodies[i], weights[i]), tol);
  return acc;
}

/// Pieces of a hyperplane cut. Points within tolerance of the hyperplane
/// belong to both closed halves and to the slice.
struct SplitResult {
  Polytope positive;
  Polytope negative;
  Polytope slice;
};

inline SplitResult split_by_hyperplane(const Polytope& p, const Hyperplane& h, double tol = 1e-10) {
  if (h.normal.size() != p.dim) throw GeometryError("split_by_hyperplane: dimension mismatch");
  SplitResult out{empty_polytope(p.dim), empty_polytope(p.dim), empty_polytope(p.dim)};
  if (p.empty()) return out;
  std::vector<double> side(p.vertices.size());
  for (std::size_t i = 0; i < p.vertices.size(); ++i) side[i] = p.vertices[i].dot(h.normal) - h.offset;
  std::vector<Vec> plus, minus, on;
  for (std::size_t i = 0; i < p.vertices.size(); ++i) {
    if (side[i] >= -tol) plus.push_back(p.vertices[i]);
    if (side[i] <= tol) minus.push_back(p.vertices[i]);
    if (std::abs(side[i]) <= tol) on.push_back(p.vertices[i]);
  }
  for (const auto& [a, b] : p.edges) {
    const double sa = side[static_cast<std::size_t>(a)];
    const double sb = side[static_cast<std::size_t>(b)];
    if ((sa > tol && sb < -tol) || (sa < -tol && sb > tol)) {
      const double t = sa / (sa - sb);
      const Vec x = p.vertices[static_cast<std::size_t>(a)] + t * (p.vertices[static_cast<std::size_t>(b)] - p.vertices[static_cast<std::size_t>(a)]);
      plus.push_back(x);
      minus.push_back(x);
      on.push_back(x);
    }
  }
  if (!plus.empty()) out.positive = build_polytope(plus, p.dim, tol);
  if (!minus.empty()) out.negative = build_polytope(minus, p.dim, tol);
  if (!on.empty()) out.slice = build_polytope(on, p.dim, tol);
  return out;
}

enum class SectionMode { slice, project };

/// A body living in the affine subspace s = basepoint + frame * t, stored in
/// intrinsic t-coordinates.
struct Section {
  Polytope body;
  Vec basepoint;
  Mat frame;
};

inline void check_frame(const Mat& frame, double tol = 1e-12) {
  const Mat g = frame.transpose() * frame;
  if ((g - Mat::Identity(g.rows(), g.cols())).lpNorm<Eigen::Infinity>() > tol) throw GeometryError("frame is not orthonormal");
}

/// Slice (full-dimensional bodies) or orthogonal projection onto the affine
/// subspace through `basepoint` spanned by the orthonormal columns of `frame`.
inline Section slice_or_project(const Polytope& p, const Vec& basepoint, const Mat& frame, SectionMode mode, double tol = 1e-10) {
  const int k = static_cast<int>(frame.cols());
  if (frame.rows() != p.dim || basepoint.size() != p.dim) throw GeometryError("slice_or_project: dimension mismatch");
  if (k < 1 || k > p.dim - 1) throw GeometryError("slice_or_project: subspace dimension must be in 1..dim-1");
  check_frame(frame);
  Section out{empty_polytope(k), basepoint, frame};
  if (p.empty()) return out;
  std::vector<Vec> pts;
  if (mode == SectionMode::project) {
    for (const auto& v : p.vertices) pts.push_back(frame.transpose() * (v - basepoint));
    out.body = build_polytope(pts, k, tol);
    return out;
  }
  if (!p.full_dimensional()) throw GeometryError("slice_or_project: slicing requires a full-dimensional body");
  const std::size_t m = p.facets.size();
  Mat a(static_cast<Eigen::Index>(m), k);
  Vec b(static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    a.row(static_cast<Eigen::Index>(i)) = (frame.transpose() * p.facets[i].normal).transpose();
    b[static_cast<Eigen::Index>(i)] = p.facets[i].offset - p.facets[i].normal.dot(basepoint);
  }
  auto feasible = [&](const Vec& t) {
    for (std::size_t i = 0; i < m; ++i) {
      if (a.row(static_cast<Eigen::Index>(i)).dot(t) > b[static_cast<Eigen::Index>(i)] + tol) return false;
    }
    return true;
  };
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  const int mi = static_cast<int>(m);
  if (mi < k) return out;
  while (true) {
    Mat sub(k, k);
    Vec rhs(k);
    for (int i = 0; i < k; ++i) {
      sub.row(i) = a.row(idx[static_cast<std::size_t>(i)]);
      rhs[i] = b[idx[static_cast<std::size_t>(i)]];
    }
    Eigen::FullPivLU<Mat> lu(sub);
    if (lu.rank() == k) {
      const Vec t = lu.solve(rhs);
      if (feasible(t)) pts.push_back(t);
    }
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == mi - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  if (!pts.empty()) out.body = build_polytope(pts, k, tol);
  return out;
}

/// True iff `inner` is contained in `outer` (vertex test against outer's facets).
inline bool contains(const Polytope& outer, const Polytope& inner, double tol = 1e-9) {
  if (inner.empty()) return true;
  for (const auto& v : inner.vertices) {
    if (!contains_point(outer, v, tol)) return false;
  }
  return true;
}

}  // namespace rotval

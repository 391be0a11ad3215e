#pragma once

#include "rotval/core/polytope.hpp"

#include <cstdint>
#include <random>

namespace rotval {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent stream seed for (seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) { return mix64(seed ^ mix64(index + 0x632be59bd9b4e019ULL)); }

inline Rng make_rng(std::uint64_t seed, std::uint64_t index) { return Rng(derive_seed(seed, index)); }

inline Vec random_gaussian_vector(Rng& rng, int d) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = g(rng);
  return v;
}

inline Vec random_unit_vector(Rng& rng, int d) {
  Vec v;
  do {
    v = random_gaussian_vector(rng, d);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

/// Uniform point in the ball of the given radius.
inline Vec random_point_in_ball(Rng& rng, int d, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return random_unit_vector(rng, d) * (radius * std::pow(u(rng), 1.0 / d));
}

/// Haar-random element of SO(d) (QR of a Gaussian matrix with sign correction).
inline Mat random_rotation(Rng& rng, int d) {
  Mat g(d, d);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = n(rng);
  }
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(d, d);
  const Mat r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  return q;
}

/// Reflection across the hyperplane orthogonal to a random unit vector.
inline Mat random_reflection(Rng& rng, int d) {
  const Vec u = random_unit_vector(rng, d);
  return Mat::Identity(d, d) - 2.0 * u * u.transpose();
}

/// Hull of `count` uniform points in the ball of radius `radius` around
/// `center`; resampled until full dimensional.
inline Polytope random_polytope(Rng& rng, int d, int count, double radius = 1.0, const Vec& center = Vec()) {
  const Vec c = center.size() == d ? center : Vec(Vec::Zero(d));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Vec> pts;
    for (int i = 0; i < count; ++i) pts.push_back(c + random_point_in_ball(rng, d, radius));
    Polytope p = build_polytope(pts, d);
    if (p.full_dimensional() && relative_volume(p) > 1e-3 * std::pow(radius, d)) return p;
  }
  throw GeometryError("random_polytope: could not generate a full-dimensional body");
}

/// Random full-dimensional polytope in the unit ball that contains the origin
/// in its interior.
inline Polytope random_origin_polytope(Rng& rng, int d, int count, double radius = 1.0) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Polytope p = random_polytope(rng, d, count, radius);
    bool inside = true;
    for (const auto& f : p.facets) {
      if (f.offset <= 1e-6) inside = false;
    }
    if (inside) return p;
  }
  throw GeometryError("random_origin_polytope: rejection sampling failed");
}

/// Random hyperplane meeting the interior of p.
inline Hyperplane random_cutting_hyperplane(Rng& rng, const Polytope& p) {
  const Vec n = random_unit_vector(rng, p.dim);
  const double hi = support_value(p, n);
  const double lo = -support_value(p, -n);
  std::uniform_real_distribution<double> u(0.1, 0.9);
  return Hyperplane{n, lo + u(rng) * (hi - lo)};
}

}  // namespace rotval

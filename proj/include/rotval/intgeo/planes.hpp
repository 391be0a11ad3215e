#pragma once

#include "rotval/core/random.hpp"

#include <array>
#include <numbers>

namespace rotval {

enum class PlaneMode { affine, linear };

/// A k-plane {z + V t}. In affine mode z is orthogonal to span(V).
struct PlaneSample {
  Mat frame;
  Vec basepoint;
  double weight = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
};

/// Volume of the m-dimensional ball of radius r.
inline double ball_volume(int m, double r) { return std::pow(std::numbers::pi, m / 2.0) / std::tgamma(m / 2.0 + 1.0) * std::pow(r, m); }

namespace detail {

/// Fixed-size plane for d <= 3: columns 0..k-1 of q span the plane, the
/// remaining columns its orthogonal complement.
struct SmallPlane {
  std::array<std::array<double, 3>, 3> q{};
  std::array<double, 3> z{};
};

/// Haar-random orthonormal basis by Gram-Schmidt on a Gaussian matrix, plus
/// a basepoint uniform in the radius-R ball of the complement (affine mode).
inline SmallPlane draw_small_plane(Rng& rng, int d, int k, double radius, PlaneMode mode) {
  std::normal_distribution<double> g(0.0, 1.0);
  SmallPlane p;
  for (int c = 0; c < d; ++c) {
    while (true) {
      std::array<double, 3> v{};
      for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] = g(rng);
      for (int prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += v[static_cast<std::size_t>(i)] * p.q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)];
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= dot * p.q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)];
      }
      // second pass for orthogonality to rounding
      for (int prev = 0; prev < c; ++prev) {
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += v[static_cast<std::size_t>(i)] * p.q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)];
        for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i)] -= dot * p.q[static_cast<std::size_t>(prev)][static_cast<std::size_t>(i)];
      }
      double n = 0.0;
      for (int i = 0; i < d; ++i) n += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      n = std::sqrt(n);
      if (n < 1e-8) continue;
      for (int i = 0; i < d; ++i) p.q[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)] / n;
      break;
    }
  }
  if (mode == PlaneMode::affine) {
    const int m = d - k;
    std::array<double, 3> y{};
    double n = 0.0;
    do {
      n = 0.0;
      for (int i = 0; i < m; ++i) {
        y[static_cast<std::size_t>(i)] = g(rng);
        n += y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
      }
    } while (n < 1e-24);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::pow(u(rng), 1.0 / m) / std::sqrt(n);
    for (int c = 0; c < m; ++c) {
      for (int i = 0; i < d; ++i) p.z[static_cast<std::size_t>(i)] += r * y[static_cast<std::size_t>(c)] * p.q[static_cast<std::size_t>(k + c)][static_cast<std::size_t>(i)];
    }
  }
  return p;
}

/// Planes are generated in chunks of this size, each chunk from its own stream.
inline constexpr std::size_t kPlaneChunk = 4096;

}  // namespace detail

/// Haar-distributed k-planes in R^d. Linear mode: frames only, weight 1
/// (probability measure). Affine mode: basepoints uniform in the radius-R
/// ball of the complement, constant weight vol_{d-k}(R-ball), which realises
/// the invariant measure on planes meeting the R-ball up to one global constant.
inline std::vector<PlaneSample> sample_planes(int d, int k, double radius, std::size_t n, std::uint64_t seed, PlaneMode mode) {
  if (d < 2 || d > 3) throw std::invalid_argument("sample_planes: dimension must be 2 or 3");
  if (k < 1 || k > d - 1) throw std::invalid_argument("sample_planes: k must be in 1..d-1");
  if (mode == PlaneMode::affine && !(radius > 0)) throw std::invalid_argument("sample_planes: radius must be positive");
  std::vector<PlaneSample> out;
  out.reserve(n);
  const double weight = mode == PlaneMode::affine ? ball_volume(d - k, radius) : 1.0;
  for (std::size_t chunk = 0; chunk * detail::kPlaneChunk < n; ++chunk) {
    Rng rng = make_rng(seed, chunk);
    const std::size_t end = std::min(n, (chunk + 1) * detail::kPlaneChunk);
    for (std::size_t i = chunk * detail::kPlaneChunk; i < end; ++i) {
      const auto sp = detail::draw_small_plane(rng, d, k, radius, mode);
      PlaneSample s;
      s.frame.resize(d, k);
      for (int c = 0; c < k; ++c) {
        for (int r = 0; r < d; ++r) s.frame(r, c) = sp.q[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
      }
      s.basepoint.resize(d);
      for (int r = 0; r < d; ++r) s.basepoint[r] = sp.z[static_cast<std::size_t>(r)];
      s.weight = weight;
      s.seed = seed;
      s.index = i;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace rotval

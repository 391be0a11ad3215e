#pragma once

#include "rotval/core/multipoly.hpp"
#include "rotval/core/parallel.hpp"
#include "rotval/core/polytope.hpp"
#include "rotval/core/random.hpp"

namespace rotval {

/// What the Monte Carlo oracle integrates: f(s) over the interior, or g(s, n)
/// over the boundary.
struct OracleTarget {
  enum class Region { interior, boundary };
  Region region = Region::interior;
  MultiPoly integrand;

  static OracleTarget interior(MultiPoly f) { return {Region::interior, std::move(f)}; }
  static OracleTarget boundary(MultiPoly g) { return {Region::boundary, std::move(g)}; }
};

struct Estimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

namespace detail {

inline constexpr std::size_t kOracleChunk = 1 << 14;

/// Uniform point in a simplex via normalized exponential spacings.
inline Vec sample_simplex(Rng& rng, const std::vector<Vec>& verts) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> w(verts.size());
  double total = 0.0;
  for (auto& x : w) {
    x = e(rng);
    total += x;
  }
  Vec p = Vec::Zero(verts.front().size());
  for (std::size_t i = 0; i < verts.size(); ++i) p += (w[i] / total) * verts[i];
  return p;
}

}  // namespace detail

/// Brute-force Monte Carlo estimate of an interior or boundary integral.
/// Interior: rejection sampling in the bounding box. Boundary: facets chosen
/// proportionally to their measure, then a uniform point within the facet.
/// Samples are drawn in fixed-size chunks with per-chunk seeds, so the result
/// does not depend on the thread count.
inline Estimate monte_carlo_oracle(const Polytope& p, const OracleTarget& target, std::size_t n, std::uint64_t seed, int threads = 1) {
  if (n < 100) throw std::invalid_argument("monte_carlo_oracle: need at least 100 samples");
  if (p.empty()) throw GeometryError("monte_carlo_oracle: empty body");
  const int d = p.dim;

  // Sampling setup.
  Vec lo = p.vertices.front(), hi = p.vertices.front();
  for (const auto& v : p.vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  const double box = (hi - lo).prod();

  struct Piece {
    std::vector<Vec> simplex;
    Vec normal;
    double measure;
  };
  std::vector<Piece> pieces;
  double total_measure = 0.0;
  bool two_sided = false;
  if (target.region == OracleTarget::Region::boundary) {
    if (target.integrand.nvars() != 2 * d) throw GeometryError("monte_carlo_oracle: boundary integrand must have 2*dim variables");
    if (p.intrinsic_dim == d) {
      for (const auto& f : p.facets) {
        for (const auto& s : f.simplices) {
          auto pts = simplex_points(p, s);
          const double m = simplex_measure(pts);
          pieces.push_back({pts, f.normal, m});
          total_measure += m;
        }
      }
    } else if (p.intrinsic_dim == d - 1) {
      two_sided = true;
      for (const auto& s : p.triangulation) {
        auto pts = simplex_points(p, s);
        const double m = simplex_measure(pts);
        pieces.push_back({pts, p.normal_space.col(0), m});
        total_measure += m;
      }
    } else {
      return Estimate{0.0, 0.0, n};
    }
  } else {
    if (target.integrand.nvars() != d) throw GeometryError("monte_carlo_oracle: interior integrand must have dim variables");
    if (!p.full_dimensional()) return Estimate{0.0, 0.0, n};
  }
  std::vector<double> piece_weights;
  for (const auto& pc : pieces) piece_weights.push_back(pc.measure);

  const std::size_t chunks = (n + detail::kOracleChunk - 1) / detail::kOracleChunk;
  std::vector<double> sums(chunks), squares(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::discrete_distribution<std::size_t> pick(piece_weights.begin(), piece_weights.end());
    const std::size_t begin = c * detail::kOracleChunk;
    const std::size_t end = std::min(n, begin + detail::kOracleChunk);
    double s = 0.0, s2 = 0.0;
    Vec arg(2 * d);
    for (std::size_t i = begin; i < end; ++i) {
      double value = 0.0;
      if (target.region == OracleTarget::Region::interior) {
        Vec x(d);
        for (int j = 0; j < d; ++j) x[j] = lo[j] + unit(rng) * (hi[j] - lo[j]);
        bool inside = true;
        for (const auto& f : p.facets) {
          if (x.dot(f.normal) > f.offset) {
            inside = false;
            break;
          }
        }
        if (inside) value = box * target.integrand.evaluate(x);
      } else {
        const Piece& pc = pieces[pick(rng)];
        const Vec x = detail::sample_simplex(rng, pc.simplex);
        Vec nrm = pc.normal;
        double factor = total_measure;
        if (two_sided) {
          if (unit(rng) < 0.5) nrm = -nrm;
          factor *= 2.0;
        }
        arg << x, nrm;
        value = factor * target.integrand.evaluate(arg);
      }
      s += value;
      s2 += value * value;
    }
    sums[c] = s;
    squares[c] = s2;
  });
  const double mean = pairwise_sum(sums) / static_cast<double>(n);
  const double mean_sq = pairwise_sum(squares) / static_cast<double>(n);
  const double var = std::max(0.0, mean_sq - mean * mean);
  return Estimate{mean, std::sqrt(var / static_cast<double>(n)), n};
}

}  // namespace rotval

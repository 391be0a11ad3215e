#pragma once

#include "rotval/core/random.hpp"
#include "rotval/valuations/translation.hpp"
#include "rotval/verify/dimension.hpp"
#include "rotval/verify/fit.hpp"

namespace rotval {

/// Values of the basis elements on one body; each descriptor's eps-expansion
/// is computed once.
inline std::vector<double> basis_features(const std::vector<BasisElement>& basis, const Polytope& body) {
  std::vector<double> out(basis.size());
  std::vector<std::pair<ValuationDescriptor, EpsilonPolynomial>> cache;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& b = basis[i];
    if (b.j == 0) {
      out[i] = evaluate(b.desc, body);
      continue;
    }
    auto it = std::find_if(cache.begin(), cache.end(), [&](const auto& c) { return c.first == b.desc; });
    if (it == cache.end()) {
      cache.emplace_back(b.desc, steiner_coefficients(b.desc, body));
      it = std::prev(cache.end());
    }
    out[i] = it->second.derivative(b.j);
  }
  return out;
}

struct BasisFitOptions {
  /// Translated copies per body, in addition to the body itself.
  int translations = 2;
  double translation_radius = 2.0;
  std::uint64_t seed = 1;
  double threshold = 1e-6;
};

/// The bodies actually used as rows: each input body and its translates by
/// points drawn uniformly from the ball of radius options.translation_radius.
inline std::vector<Polytope> basis_fit_rows(const std::vector<Polytope>& bodies, const BasisFitOptions& options) {
  std::vector<Polytope> rows;
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    rows.push_back(bodies[b]);
    Rng rng = make_rng(options.seed, b);
    for (int t = 0; t < options.translations; ++t) rows.push_back(translated(bodies[b], random_point_in_ball(rng, bodies[b].dim, options.translation_radius)));
  }
  return rows;
}

/// Least-squares fit of a black-box valuation against the basis of degree
/// ell for the given group. Throws FitError on a rank-deficient design.
inline FitReport fit_in_basis(const BodyFunctional& target, int d, int ell, const std::vector<Polytope>& bodies, Group group, const BasisFitOptions& options = {}) {
  const auto basis = basis_enumeration(group, d, ell);
  if (bodies.size() < 2 * basis.size()) throw std::invalid_argument("fit_in_basis: need at least twice as many bodies as basis elements");
  for (const auto& b : bodies) {
    if (b.dim != d) throw GeometryError("fit_in_basis: body dimension mismatch");
  }
  const auto rows = basis_fit_rows(bodies, options);
  Mat design(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(basis.size()));
  Vec values(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto f = basis_features(basis, rows[i]);
    for (std::size_t j = 0; j < f.size(); ++j) design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f[j];
    values[static_cast<Eigen::Index>(i)] = target(rows[i]);
  }
  std::vector<std::string> labels;
  for (const auto& b : basis) labels.push_back(b.name());
  return fit_report(std::string("basis fit ") + (group == Group::O ? "O" : "SO") + " d=" + std::to_string(d) + " l=" + std::to_string(ell), design, values, labels, options.threshold,
                    1e-6 * std::sqrt(static_cast<double>(rows.size())));
}

/// Target given by a basis element itself.
inline BodyFunctional basis_functional(const BasisElement& e) {
  return [e](const Polytope& k) { return e.j == 0 ? evaluate(e.desc, k) : derivative_valuation(e.desc, e.j, k); };
}

}  // namespace rotval

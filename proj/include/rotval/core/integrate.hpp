#pragma once

#include "rotval/core/multipoly.hpp"
#include "rotval/core/polytope.hpp"
#include "rotval/core/quadrature.hpp"

#include <span>

namespace rotval {

namespace detail {

template <class Scalar>
Scalar factorial_as(int n) {
  Scalar r(1);
  for (int i = 2; i <= n; ++i) r *= Scalar(i);
  return r;
}

/// Determinant by Gaussian elimination; works for exact scalar types.
template <class Scalar>
Scalar determinant(std::vector<std::vector<Scalar>> a) {
  const std::size_t n = a.size();
  Scalar det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a[pivot][c] == Scalar(0)) ++pivot;
    if (pivot == n) return Scalar(0);
    if (pivot != c) {
      std::swap(a[pivot], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const Scalar factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  return det;
}

/// Integral over the standard f-simplex of p(t), using prod(g_i!) / (f + |g|)!.
template <class Scalar>
Scalar standard_simplex_integral(const BasicMultiPoly<Scalar>& p) {
  const int f = p.nvars();
  Scalar sum(0);
  for (const auto& [e, c] : p.terms()) {
    Scalar num(1);
    for (int g : e) num *= factorial_as<Scalar>(g);
    sum += c * num / factorial_as<Scalar>(f + total_degree(e));
  }
  return sum;
}

/// Pulls f back along x = v0 + sum_j t_j (v_j - v0).
template <class Scalar>
BasicMultiPoly<Scalar> pull_back_to_simplex(const BasicMultiPoly<Scalar>& poly, const std::vector<std::vector<Scalar>>& verts) {
  const int fdim = static_cast<int>(verts.size()) - 1;
  const std::size_t d = verts.front().size();
  std::vector<BasicMultiPoly<Scalar>> subs;
  for (std::size_t i = 0; i < d; ++i) {
    auto s = BasicMultiPoly<Scalar>::constant(fdim, verts[0][i]);
    for (int j = 0; j < fdim; ++j) {
      s += BasicMultiPoly<Scalar>::variable(fdim, j) * (verts[static_cast<std::size_t>(j + 1)][i] - verts[0][i]);
    }
    subs.push_back(s);
  }
  return poly.compose(subs);
}

}  // namespace detail

/// Exact integral of a polynomial over a full-dimensional simplex (d + 1 vertices in R^d).
template <class Scalar>
Scalar integrate_over_full_simplex(const BasicMultiPoly<Scalar>& poly, const std::vector<std::vector<Scalar>>& verts) {
  const std::size_t d = verts.front().size();
  std::vector<std::vector<Scalar>> edges(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) edges[i][j] = verts[j + 1][i] - verts[0][i];
  }
  Scalar jac = detail::determinant(edges);
  if (jac < Scalar(0)) jac = -jac;
  return jac * detail::standard_simplex_integral(detail::pull_back_to_simplex(poly, verts));
}

/// Integral over an f-simplex embedded in R^d with respect to f-dimensional measure.
inline double integrate_over_simplex(const MultiPoly& poly, const std::vector<Vec>& verts) {
  const int f = static_cast<int>(verts.size()) - 1;
  if (f == 0) return poly.evaluate(verts.front());
  std::vector<std::vector<double>> v;
  for (const auto& p : verts) v.emplace_back(p.data(), p.data() + p.size());
  const double measure = simplex_measure(verts) * factorial(f);
  return measure * detail::standard_simplex_integral(detail::pull_back_to_simplex(poly, v));
}

/// Exact integral over a full-dimensional polytope by summing the closed-form
/// monomial integral over the triangulation. `Scalar` may be an exact
/// rational type; vertex coordinates convert exactly from double.
template <class Scalar>
Scalar integrate_polynomial_exact(const Polytope& p, const BasicMultiPoly<Scalar>& f) {
  if (!p.full_dimensional()) throw GeometryError("integrate_polynomial: body is not full dimensional");
  if (f.nvars() != p.dim) throw GeometryError("integrate_polynomial: polynomial dimension mismatch");
  Scalar total(0);
  for (const auto& s : p.triangulation) {
    std::vector<std::vector<Scalar>> verts;
    for (int i : s) {
      const Vec& v = p.vertices[static_cast<std::size_t>(i)];
      std::vector<Scalar> row;
      for (Eigen::Index j = 0; j < v.size(); ++j) row.push_back(Scalar(v[j]));
      verts.push_back(std::move(row));
    }
    total += integrate_over_full_simplex(f, verts);
  }
  return total;
}

inline double integrate_polynomial(const Polytope& p, const MultiPoly& f) { return integrate_polynomial_exact<double>(p, f); }

/// Integral of a polynomial over the polytope in its own affine hull
/// (relative measure); points evaluate the integrand.
inline double integrate_relative(const Polytope& p, const MultiPoly& f) {
  if (p.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : p.triangulation) total += integrate_over_simplex(f, simplex_points(p, s));
  return total;
}

/// Boundary integral of g(s, n) where g is a polynomial in the 2*dim
/// variables (s_1..s_d, n_1..n_d). Full-dimensional bodies integrate over
/// their facets; bodies of codimension one count both normals; bodies of
/// codimension two or more contribute zero.
inline double boundary_integral(const Polytope& p, const MultiPoly& g) {
  if (g.nvars() != 2 * p.dim) throw GeometryError("boundary_integral: integrand must have 2*dim variables");
  if (p.empty()) return 0.0;
  const int d = p.dim;
  if (p.intrinsic_dim == d) {
    double total = 0.0;
    for (const auto& facet : p.facets) {
      std::vector<double> n(facet.normal.data(), facet.normal.data() + d);
      const MultiPoly gf = g.evaluate_partial(d, std::span<const double>(n));
      for (const auto& s : facet.simplices) total += integrate_over_simplex(gf, simplex_points(p, s));
    }
    return total;
  }
  if (p.intrinsic_dim == d - 1) {
    const Vec m = p.normal_space.col(0);
    std::vector<double> plus(m.data(), m.data() + d);
    std::vector<double> minus(plus);
    for (auto& x : minus) x = -x;
    const MultiPoly two_sided = g.evaluate_partial(d, std::span<const double>(plus)) + g.evaluate_partial(d, std::span<const double>(minus));
    return integrate_relative(p, two_sided);
  }
  return 0.0;
}

}  // namespace rotval

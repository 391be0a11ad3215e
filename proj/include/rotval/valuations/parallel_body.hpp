#pragma once

#include "rotval/core/integrate.hpp"
#include "rotval/valuations/descriptor.hpp"
#include "rotval/valuations/epsilon_polynomial.hpp"
#include "rotval/valuations/sphere.hpp"

#include <map>

namespace rotval {

/// The parallel body K + eps*B decomposes into the pieces F + eps*(N(F) ∩ B)
/// over all faces F. A boundary density g contributes
///   sum_F eps^r ∫_F ∫_{U_F} g(x + eps u, u) du dx,   r = d - 1 - dim F,
/// and an interior density f contributes the core integral plus
///   sum_F ∫_F ∫_{U_F} ∫_0^eps f(x + rho u) rho^r d rho du dx.
/// Both are expanded symbolically in eps: the integrand becomes a polynomial
/// in (x, u, eps) whose x- and u-monomials are integrated separately over the
/// face and over the spherical cone trace.
struct SeparatedIntegrand {
  int dim = 0;
  bool interior = false;
  std::vector<Exponent> x_monomials;
  std::vector<Exponent> u_monomials;
  struct Term {
    int x;
    int u;
    int power;
    double coeff;
  };
  std::vector<Term> terms;
  int max_x_degree = 0;
  int max_power = 0;
};

/// Splits poly(x + eps*u, [u]) into separated monomials. For boundary
/// densities `poly` has 2*dim variables (s, n); for interior densities dim.
inline SeparatedIntegrand separate_integrand(const MultiPoly& poly, int dim, bool interior) {
  const int nv = 2 * dim + 1;
  std::vector<MultiPoly> subs;
  const MultiPoly eps = MultiPoly::variable(nv, 2 * dim);
  for (int i = 0; i < dim; ++i) subs.push_back(MultiPoly::variable(nv, i) + eps * MultiPoly::variable(nv, dim + i));
  if (!interior) {
    for (int i = 0; i < dim; ++i) subs.push_back(MultiPoly::variable(nv, dim + i));
  }
  const MultiPoly expanded = poly.compose(subs);
  SeparatedIntegrand out;
  out.dim = dim;
  out.interior = interior;
  std::map<Exponent, int> xi, ui;
  for (const auto& [e, c] : expanded.terms()) {
    Exponent ex(e.begin(), e.begin() + dim);
    Exponent eu(e.begin() + dim, e.begin() + 2 * dim);
    auto [itx, newx] = xi.emplace(ex, static_cast<int>(out.x_monomials.size()));
    if (newx) out.x_monomials.push_back(ex);
    auto [itu, newu] = ui.emplace(eu, static_cast<int>(out.u_monomials.size()));
    if (newu) out.u_monomials.push_back(eu);
    const int power = e[static_cast<std::size_t>(2 * dim)];
    out.terms.push_back({itx->second, itu->second, power, c});
    out.max_x_degree = std::max(out.max_x_degree, total_degree(ex));
    out.max_power = std::max(out.max_power, power);
  }
  return out;
}

namespace detail {

/// Simplices (as point lists) covering a face.
inline std::vector<std::vector<Vec>> face_simplices(const Polytope& p, const Face& face) {
  std::vector<std::vector<Vec>> out;
  if (face.dim == 0) {
    out.push_back({p.vertices[static_cast<std::size_t>(face.vertices.front())]});
    return out;
  }
  if (face.dim == p.intrinsic_dim) {
    for (const auto& s : p.triangulation) out.push_back(simplex_points(p, s));
    return out;
  }
  if (face.dim == p.intrinsic_dim - 1) {
    for (const auto& f : p.facets) {
      auto fv = f.vertices;
      std::sort(fv.begin(), fv.end());
      if (fv == face.vertices) {
        for (const auto& s : f.simplices) out.push_back(simplex_points(p, s));
        return out;
      }
    }
  }
  std::vector<Vec> pts;
  for (int v : face.vertices) pts.push_back(p.vertices[static_cast<std::size_t>(v)]);
  const Polytope sub = build_polytope(pts, p.dim);
  for (const auto& s : sub.triangulation) out.push_back(simplex_points(sub, s));
  return out;
}

inline PointRule face_rule(const Polytope& p, const Face& face, int degree) {
  std::vector<PointRule> parts;
  for (const auto& s : face_simplices(p, face)) parts.push_back(simplex_rule(s, degree));
  return merge_rules(parts);
}

inline std::vector<double> rule_moments(const PointRule& rule, const std::vector<Exponent>& monomials) {
  std::vector<double> out(monomials.size(), 0.0);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const Vec x = rule.points.col(static_cast<Eigen::Index>(k));
    for (std::size_t i = 0; i < monomials.size(); ++i) out[i] += rule.weights[k] * monomial_value(monomials[i], x);
  }
  return out;
}

inline void check_engine_dim(const Polytope& p) {
  if (p.dim < 1 || p.dim > 3) throw GeometryError("parallel-body engine supports dimensions 1 to 3");
}

}  // namespace detail

/// Separated forms of both densities of an integrand, reusable across bodies.
struct PreparedIntegrand {
  ValuationIntegrand source;
  std::vector<SeparatedIntegrand> parts;
};

inline PreparedIntegrand prepare_integrand(const ValuationIntegrand& integrand) {
  PreparedIntegrand out{integrand, {}};
  if (integrand.boundary) out.parts.push_back(separate_integrand(*integrand.boundary, integrand.dim, false));
  if (integrand.interior) out.parts.push_back(separate_integrand(*integrand.interior, integrand.dim, true));
  return out;
}

/// Exact-in-eps expansion of the valuation with the given integrands on K + eps*B.
inline EpsilonPolynomial expand_parallel_body(const PreparedIntegrand& prepared, const Polytope& p, int degree_bound) {
  detail::check_engine_dim(p);
  if (prepared.source.dim != p.dim) throw GeometryError("integrand dimension does not match the body");
  const ValuationIntegrand& integrand = prepared.source;
  EpsilonPolynomial out;
  out.degree_bound = degree_bound;
  const int d = p.dim;
  std::vector<double> coeffs(static_cast<std::size_t>(std::max(degree_bound, 0) + 1), 0.0);
  auto add = [&](int power, double v) {
    if (power >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(power + 1), 0.0);
    coeffs[static_cast<std::size_t>(power)] += v;
  };
  if (p.empty()) {
    out.coeffs = coeffs;
    return out;
  }
  const auto& parts = prepared.parts;
  if (integrand.interior && p.full_dimensional()) add(0, integrate_polynomial(p, *integrand.interior));
  for (const Face& face : faces(p)) {
    if (face.dim >= d) continue;
    const int r = d - 1 - face.dim;
    const auto pieces = normal_cone_pieces(p, face);
    for (const auto& part : parts) {
      const PointRule rule = detail::face_rule(p, face, part.max_x_degree);
      const auto face_mom = detail::rule_moments(rule, part.x_monomials);
      for (const auto& piece : pieces) {
        const auto sphere_mom = cone_moments(piece, part.u_monomials);
        for (const auto& t : part.terms) {
          const double v = t.coeff * face_mom[static_cast<std::size_t>(t.x)] * sphere_mom[static_cast<std::size_t>(t.u)];
          if (part.interior) {
            add(t.power + r + 1, v / (t.power + r + 1));
          } else {
            add(t.power + r, v);
          }
        }
      }
    }
  }
  out.coeffs = coeffs;
  return out;
}

inline EpsilonPolynomial expand_parallel_body(const ValuationIntegrand& integrand, const Polytope& p, int degree_bound) {
  return expand_parallel_body(prepare_integrand(integrand), p, degree_bound);
}

/// Direct evaluation on K + eps*B by product quadrature over faces, cone
/// traces and (for interior densities) the radial variable.
inline double integrate_parallel_body(const ValuationIntegrand& integrand, const Polytope& p, double eps) {
  detail::check_engine_dim(p);
  if (eps < 0) throw std::invalid_argument("parallel body radius must be nonnegative");
  if (p.empty()) return 0.0;
  const int d = p.dim;
  double total = 0.0;
  if (integrand.interior && p.full_dimensional()) {
    const MultiPoly& f = *integrand.interior;
    for (const auto& s : p.triangulation) {
      const PointRule rule = simplex_rule(simplex_points(p, s), f.degree());
      for (std::size_t k = 0; k < rule.size(); ++k) total += rule.weights[k] * f.evaluate(rule.points.col(static_cast<Eigen::Index>(k)));
    }
  }
  if (eps == 0.0) {
    if (integrand.boundary) total += boundary_integral(p, *integrand.boundary);
    return total;
  }
  const int gdeg = integrand.boundary ? integrand.boundary->degree() : 0;
  const int fdeg = integrand.interior ? integrand.interior->degree() : 0;
  const int angular_order = std::max(gdeg, fdeg) / 2 + 12;
  Vec arg(2 * d);
  for (const Face& face : faces(p)) {
    if (face.dim >= d) continue;
    const int r = d - 1 - face.dim;
    const double scale = std::pow(eps, r);
    const PointRule xrule = detail::face_rule(p, face, std::max(gdeg, fdeg));
    for (const auto& piece : normal_cone_pieces(p, face)) {
      const PointRule urule = cone_rule(piece, angular_order);
      for (std::size_t i = 0; i < xrule.size(); ++i) {
        const Vec x = xrule.points.col(static_cast<Eigen::Index>(i));
        for (std::size_t j = 0; j < urule.size(); ++j) {
          const Vec u = urule.points.col(static_cast<Eigen::Index>(j));
          const double w = xrule.weights[i] * urule.weights[j];
          if (integrand.boundary) {
            arg << x + eps * u, u;
            total += w * scale * integrand.boundary->evaluate(arg);
          }
          if (integrand.interior) {
            const LineRule& radial = gauss_legendre(gauss_points_for_degree(fdeg + r));
            double acc = 0.0;
            for (std::size_t k = 0; k < radial.nodes.size(); ++k) {
              const double rho = eps * radial.nodes[k];
              acc += radial.weights[k] * std::pow(rho, r) * integrand.interior->evaluate(Vec(x + rho * u));
            }
            total += w * eps * acc;
          }
        }
      }
    }
  }
  return total;
}

}  // namespace rotval

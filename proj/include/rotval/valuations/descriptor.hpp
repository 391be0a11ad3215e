#pragma once

#include "rotval/core/multipoly.hpp"

#include <optional>
#include <string>

namespace rotval {

/// Which valuation family to evaluate.
///   moment(m):  integral over K of |s|^(2m)
///   xi(p, q):   boundary integral of <s,n>^p |s|^(2q)
///   psi(p, q):  boundary integral of <s,n>^p <s,n'>^q with n' = n rotated by +90 degrees (plane only)
struct ValuationDescriptor {
  enum class Kind { moment, xi, psi };
  Kind kind = Kind::moment;
  int m = 0;
  int p = 0;
  int q = 0;

  static ValuationDescriptor moment(int m) { return {Kind::moment, m, 0, 0}; }
  static ValuationDescriptor xi(int p, int q) { return {Kind::xi, 0, p, q}; }
  static ValuationDescriptor psi(int p, int q) { return {Kind::psi, 0, p, q}; }

  /// Degree of polynomiality under translations.
  int degree() const {
    switch (kind) {
      case Kind::moment:
        return 2 * m;
      case Kind::xi:
        return p == 1 ? 2 * q : p + 2 * q;
      case Kind::psi:
        return p + q == 1 ? 0 : p + q;
    }
    return 0;
  }

  bool is_boundary() const { return kind != Kind::moment; }

  std::string name() const {
    switch (kind) {
      case Kind::moment:
        return "moment(" + std::to_string(m) + ")";
      case Kind::xi:
        return "xi(" + std::to_string(p) + "," + std::to_string(q) + ")";
      case Kind::psi:
        return "psi(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return "";
  }

  friend bool operator==(const ValuationDescriptor&, const ValuationDescriptor&) = default;
};

inline void validate(const ValuationDescriptor& desc) {
  if (desc.m < 0 || desc.p < 0 || desc.q < 0) throw std::invalid_argument("descriptor indices must be nonnegative");
}

/// Integrands of a valuation on a body in R^dim: an interior density f(s)
/// (dim variables) and/or a boundary density g(s, n) (2*dim variables).
struct ValuationIntegrand {
  int dim = 0;
  std::optional<MultiPoly> interior;
  std::optional<MultiPoly> boundary;
};

inline ValuationIntegrand integrand_for(const ValuationDescriptor& desc, int dim) {
  validate(desc);
  ValuationIntegrand out;
  out.dim = dim;
  switch (desc.kind) {
    case ValuationDescriptor::Kind::moment:
      out.interior = norm_squared_poly(dim, 0, dim).pow(desc.m);
      break;
    case ValuationDescriptor::Kind::xi:
      out.boundary = dot_poly(2 * dim, 0, dim, dim).pow(desc.p) * norm_squared_poly(2 * dim, 0, dim).pow(desc.q);
      break;
    case ValuationDescriptor::Kind::psi: {
      if (dim != 2) throw std::invalid_argument("psi valuations are defined in the plane only");
      // <s, n'> with n' = (-n2, n1)
      const MultiPoly s1 = MultiPoly::variable(4, 0), s2 = MultiPoly::variable(4, 1);
      const MultiPoly n1 = MultiPoly::variable(4, 2), n2 = MultiPoly::variable(4, 3);
      const MultiPoly tangential = s2 * n1 - s1 * n2;
      out.boundary = dot_poly(4, 0, 2, 2).pow(desc.p) * tangential.pow(desc.q);
      break;
    }
  }
  return out;
}

}  // namespace rotval

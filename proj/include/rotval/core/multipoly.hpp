#pragma once

#include "rotval/core/types.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <span>
#include <vector>

namespace rotval {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Sparse multivariate polynomial. Coefficients are kept in a map keyed by the
/// exponent multi-index; zero coefficients are never stored.
template <class Scalar>
class BasicMultiPoly {
 public:
  using Terms = std::map<Exponent, Scalar>;

  explicit BasicMultiPoly(int nvars = 0) : nvars_(nvars) {}

  static BasicMultiPoly constant(int nvars, const Scalar& c) {
    BasicMultiPoly p(nvars);
    p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }

  static BasicMultiPoly variable(int nvars, int index) {
    assert(index >= 0 && index < nvars);
    BasicMultiPoly p(nvars);
    Exponent e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.add_term(e, Scalar(1));
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  Scalar coefficient(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (static_cast<int>(e.size()) != nvars_) throw GeometryError("exponent length does not match variable count");
    if (c == Scalar(0)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == Scalar(0)) terms_.erase(it);
    }
  }

  BasicMultiPoly& operator+=(const BasicMultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  BasicMultiPoly& operator-=(const BasicMultiPoly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  BasicMultiPoly& operator*=(const Scalar& s) {
    if (s == Scalar(0)) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend BasicMultiPoly operator+(BasicMultiPoly a, const BasicMultiPoly& b) { return a += b; }
  friend BasicMultiPoly operator-(BasicMultiPoly a, const BasicMultiPoly& b) { return a -= b; }
  friend BasicMultiPoly operator*(BasicMultiPoly a, const Scalar& s) { return a *= s; }
  friend BasicMultiPoly operator*(const Scalar& s, BasicMultiPoly a) { return a *= s; }

  friend BasicMultiPoly operator*(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    a.check_same(b);
    BasicMultiPoly r(a.nvars_);
    Exponent e(static_cast<std::size_t>(a.nvars_));
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  BasicMultiPoly pow(int k) const {
    BasicMultiPoly r = constant(nvars_, Scalar(1));
    BasicMultiPoly base = *this;
    while (k > 0) {
      if (k & 1) r = r * base;
      k >>= 1;
      if (k > 0) base = base * base;
    }
    return r;
  }

  template <class Point>
  Scalar evaluate(const Point& x) const {
    Scalar sum(0);
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      for (int i = 0; i < nvars_; ++i) {
        for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) t *= x[i];
      }
      sum += t;
    }
    return sum;
  }

  /// Fixes variables [first, first + values.size()) to the given values; the
  /// result has those variables removed.
  BasicMultiPoly evaluate_partial(int first, std::span<const Scalar> values) const {
    const int nfix = static_cast<int>(values.size());
    BasicMultiPoly r(nvars_ - nfix);
    Exponent out(static_cast<std::size_t>(nvars_ - nfix));
    for (const auto& [e, c] : terms_) {
      Scalar t = c;
      int j = 0;
      for (int i = 0; i < nvars_; ++i) {
        const int ei = e[static_cast<std::size_t>(i)];
        if (i >= first && i < first + nfix) {
          for (int k = 0; k < ei; ++k) t *= values[static_cast<std::size_t>(i - first)];
        } else {
          out[static_cast<std::size_t>(j++)] = ei;
        }
      }
      r.add_term(out, t);
    }
    return r;
  }

  /// Substitutes variable i by subs[i]; all substitutes share one variable count.
  BasicMultiPoly compose(const std::vector<BasicMultiPoly>& subs) const {
    if (static_cast<int>(subs.size()) != nvars_) throw GeometryError("compose: substitution count mismatch");
    const int m = subs.empty() ? 0 : subs.front().nvars();
    const int deg = std::max(degree(), 0);
    // powers[i][k] = subs[i]^k
    std::vector<std::vector<BasicMultiPoly>> powers(subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      powers[i].push_back(constant(m, Scalar(1)));
      for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * subs[i]);
    }
    BasicMultiPoly r(m);
    for (const auto& [e, c] : terms_) {
      BasicMultiPoly t = constant(m, c);
      for (std::size_t i = 0; i < subs.size(); ++i) {
        if (e[i] > 0) t = t * powers[i][static_cast<std::size_t>(e[i])];
      }
      r += t;
    }
    return r;
  }

  /// Homogeneous component of the given total degree.
  BasicMultiPoly homogeneous_part(int deg) const {
    BasicMultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      if (total_degree(e) == deg) r.add_term(e, c);
    }
    return r;
  }

  /// Drops coefficients whose magnitude is below `cutoff` (double coefficients only).
  BasicMultiPoly pruned(double cutoff) const {
    BasicMultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      using std::abs;
      if (abs(c) > cutoff) r.add_term(e, c);
    }
    return r;
  }

 private:
  void check_same(const BasicMultiPoly& o) const {
    if (o.nvars_ != nvars_) throw GeometryError("polynomial variable count mismatch");
  }

  int nvars_;
  Terms terms_;
};

using MultiPoly = BasicMultiPoly<double>;

/// |x|^2 over variables [first, first + count) of an nvars-variable ring.
inline MultiPoly norm_squared_poly(int nvars, int first, int count) {
  MultiPoly p(nvars);
  for (int i = 0; i < count; ++i) {
    MultiPoly v = MultiPoly::variable(nvars, first + i);
    p += v * v;
  }
  return p;
}

/// <a, b> where a occupies variables [first_a, first_a + count) and b [first_b, first_b + count).
inline MultiPoly dot_poly(int nvars, int first_a, int first_b, int count) {
  MultiPoly p(nvars);
  for (int i = 0; i < count; ++i) p += MultiPoly::variable(nvars, first_a + i) * MultiPoly::variable(nvars, first_b + i);
  return p;
}

/// All exponents in `nvars` variables with total degree <= max_degree (graded order).
inline std::vector<Exponent> monomials_up_to(int nvars, int max_degree) {
  std::vector<Exponent> out;
  Exponent e(static_cast<std::size_t>(nvars), 0);
  for (int deg = 0; deg <= max_degree; ++deg) {
    // enumerate compositions of deg into nvars parts
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == nvars - 1) {
        e[static_cast<std::size_t>(i)] = left;
        out.push_back(e);
        return;
      }
      for (int k = left; k >= 0; --k) {
        e[static_cast<std::size_t>(i)] = k;
        self(self, i + 1, left - k);
      }
    };
    if (nvars == 0) {
      if (deg == 0) out.push_back(e);
      continue;
    }
    rec(rec, 0, deg);
  }
  return out;
}

inline double monomial_value(const Exponent& e, const Vec& x) {
  double t = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (int k = 0; k < e[i]; ++k) t *= x[static_cast<Eigen::Index>(i)];
  }
  return t;
}

}  // namespace rotval

#pragma once

#include "rotval/valuations/descriptor.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace rotval {

enum class Group { O, SO };

/// A basis valuation: the j-th eps-derivative at 0 of desc(K + eps*B).
struct BasisElement {
  ValuationDescriptor desc;
  int j = 0;

  std::string name() const { return j == 0 ? desc.name() : desc.name() + "^(" + std::to_string(j) + ")"; }
  friend bool operator==(const BasisElement&, const BasisElement&) = default;
};

struct DimensionEntry {
  int d = 0;
  int ell = 0;
  /// Closed-form increment and cumulative dimension.
  long increment = 0;
  long cumulative = 0;
  /// The same two numbers counted from the basis enumeration.
  long enumerated_increment = 0;
  long enumerated_cumulative = 0;

  bool consistent() const { return increment == enumerated_increment && cumulative == enumerated_cumulative; }
};

struct DimensionTable {
  Group group = Group::O;
  std::vector<DimensionEntry> entries;

  const DimensionEntry& at(int d, int ell) const {
    for (const auto& e : entries) {
      if (e.d == d && e.ell == ell) return e;
    }
    throw std::out_of_range("dimension table has no entry for this (d, l)");
  }
  bool consistent() const {
    for (const auto& e : entries) {
      if (!e.consistent()) return false;
    }
    return true;
  }
};

/// Closed-form increment of the O(d) table at degree ell.
inline long o_increment(int d, int ell) { return static_cast<long>(d - 1) * (ell / 2) + (ell % 2 == 0 ? d + 1 : 0); }

/// Closed-form SO(2) cumulative dimension at degree ell.
inline long so2_cumulative(int ell) {
  long omega = 3;
  for (int l = 1; l <= ell; ++l) omega += l % 2 == 0 ? l + 3 : l - 1;
  return omega;
}

/// Basis elements that are new at degree exactly ell.
///   O:  xi_{p,q}^{(j)} with p >= 2, p + 2q = ell, 0 <= j <= d-2, and
///       xi_{1,ell/2}^{(j)} with 0 <= j <= d for even ell.
///   SO (plane): psi_{p,q} with p + q = ell (only p >= 2 for odd ell), and
///       for even ell the moment(ell/2) together with its second eps-derivative.
inline std::vector<BasisElement> basis_level(Group group, int d, int ell) {
  std::vector<BasisElement> out;
  if (group == Group::O) {
    for (int p = 2; p <= ell; ++p) {
      if ((ell - p) % 2 != 0) continue;
      for (int j = 0; j <= d - 2; ++j) out.push_back({ValuationDescriptor::xi(p, (ell - p) / 2), j});
    }
    if (ell % 2 == 0) {
      for (int j = 0; j <= d; ++j) out.push_back({ValuationDescriptor::xi(1, ell / 2), j});
    }
    return out;
  }
  if (d != 2) throw std::invalid_argument("the SO table is only defined in the plane");
  for (int p = ell; p >= 0; --p) {
    if (ell % 2 == 1 && p < 2) continue;
    out.push_back({ValuationDescriptor::psi(p, ell - p), 0});
  }
  if (ell % 2 == 0) {
    out.push_back({ValuationDescriptor::moment(ell / 2), 0});
    out.push_back({ValuationDescriptor::moment(ell / 2), 2});
  }
  return out;
}

/// All basis elements up to degree ell.
inline std::vector<BasisElement> basis_enumeration(Group group, int d, int ell) {
  std::vector<BasisElement> out;
  for (int l = 0; l <= ell; ++l) {
    const auto level = basis_level(group, d, l);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

inline DimensionTable dimension_table(int d_max, int ell_max, Group group) {
  if (ell_max < 0) throw std::invalid_argument("dimension table: negative degree");
  DimensionTable t;
  t.group = group;
  const int d_min = 2;
  if (group == Group::O && d_max < 2) throw std::invalid_argument("dimension table: d_max must be at least 2");
  const int d_hi = group == Group::SO ? 2 : d_max;
  for (int d = d_min; d <= d_hi; ++d) {
    long cumulative = 0, enumerated = 0;
    for (int ell = 0; ell <= ell_max; ++ell) {
      DimensionEntry e;
      e.d = d;
      e.ell = ell;
      if (group == Group::O) {
        e.increment = o_increment(d, ell);
        cumulative += e.increment;
        e.cumulative = cumulative;
      } else {
        e.cumulative = so2_cumulative(ell);
        e.increment = ell == 0 ? e.cumulative : e.cumulative - so2_cumulative(ell - 1);
      }
      e.enumerated_increment = static_cast<long>(basis_level(group, d, ell).size());
      enumerated += e.enumerated_increment;
      e.enumerated_cumulative = enumerated;
      t.entries.push_back(e);
    }
  }
  return t;
}

}  // namespace rotval

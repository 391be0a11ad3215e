#pragma once

#include "rotval/core/parallel.hpp"
#include "rotval/verify/checks.hpp"

#include <functional>

namespace rotval {

/// Descriptor families exercised by the batch checks in dimension d.
inline std::vector<ValuationDescriptor> descriptor_families(int d) {
  std::vector<ValuationDescriptor> out;
  for (int m = 0; m <= 2; ++m) out.push_back(ValuationDescriptor::moment(m));
  for (int p = 0; p <= 3; ++p) {
    for (int q = 0; q <= 2; ++q) {
      if (p + 2 * q <= 5) out.push_back(ValuationDescriptor::xi(p, q));
    }
  }
  if (d == 2) {
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; p + q <= 3; ++q) out.push_back(ValuationDescriptor::psi(p, q));
    }
  }
  return out;
}

/// Random full-dimensional body: d+1..d+6 points in the unit ball around a
/// centre within 0.5 of the origin.
inline Polytope random_test_body(Rng& rng, int d) {
  std::uniform_int_distribution<int> count(d + 1, d + 6);
  const Vec c = random_point_in_ball(rng, d, 0.5);
  return random_polytope(rng, d, count(rng), 1.0, c);
}

/// Worst case over many reports of one kind. relative_residual is the
/// largest one, pass requires every report to pass; extras keep the worst
/// (largest) value of each extra and the index of the worst report.
inline FitReport aggregate_reports(std::string name, const std::vector<FitReport>& reports, double threshold) {
  FitReport r;
  r.name = std::move(name);
  r.rows = reports.size();
  r.threshold = threshold;
  r.pass = true;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& x = reports[i];
    r.pass = r.pass && x.pass;
    if (x.relative_residual > r.relative_residual || i == 0) {
      r.relative_residual = x.relative_residual;
      worst = i;
    }
    r.condition = std::max(r.condition, x.condition);
    for (const auto& [k, v] : x.extras) {
      auto it = r.extras.find("max_" + k);
      if (it == r.extras.end()) {
        r.extras["max_" + k] = v;
      } else {
        it->second = std::max(it->second, v);
      }
    }
  }
  r.extras["worst_index"] = static_cast<double>(worst);
  r.extras["failures"] = static_cast<double>(std::count_if(reports.begin(), reports.end(), [](const FitReport& x) { return !x.pass; }));
  return r;
}

/// Cut additivity of every family on `trials` random (body, hyperplane)
/// pairs; one aggregated report per descriptor.
inline std::vector<FitReport> additivity_batch(int d, int trials, std::uint64_t seed, int threads = 1, double threshold = 1e-9) {
  const auto descs = descriptor_families(d);
  std::vector<std::vector<FitReport>> per(static_cast<std::size_t>(trials));
  parallel_for(per.size(), threads, [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    const Polytope p = random_test_body(rng, d);
    const Hyperplane h = random_cutting_hyperplane(rng, p);
    for (const auto& desc : descs) per[t].push_back(check_additivity(desc, p, h, threshold));
  });
  std::vector<FitReport> out;
  for (std::size_t k = 0; k < descs.size(); ++k) {
    std::vector<FitReport> col;
    for (const auto& row : per) col.push_back(row[k]);
    out.push_back(aggregate_reports("additivity " + descs[k].name() + " d=" + std::to_string(d), col, threshold));
  }
  return out;
}

/// Minkowski polynomiality of degree d + ell on `tuples` random tuples of
/// one to three bodies; descriptors rotate through a fixed list.
inline std::vector<FitReport> minkowski_batch(int d, int tuples, std::uint64_t seed, int threads = 1, double threshold = 1e-8, double overflow_threshold = 1e-6) {
  std::vector<ValuationDescriptor> descs{ValuationDescriptor::moment(0), ValuationDescriptor::moment(1), ValuationDescriptor::xi(0, 0), ValuationDescriptor::xi(2, 0), ValuationDescriptor::xi(1, 1)};
  if (d == 2) {
    descs.push_back(ValuationDescriptor::psi(2, 1));
    descs.push_back(ValuationDescriptor::xi(3, 0));
  }
  std::vector<FitReport> per(static_cast<std::size_t>(tuples));
  std::vector<std::size_t> which(per.size());
  parallel_for(per.size(), threads, [&](std::size_t t) {
    Rng rng = make_rng(seed, t);
    std::uniform_int_distribution<int> count(1, d == 2 ? 3 : 2);
    const int s = count(rng);
    std::vector<Polytope> bodies;
    for (int i = 0; i < s; ++i) bodies.push_back(random_test_body(rng, d));
    which[t] = t % descs.size();
    const auto& desc = descs[which[t]];
    per[t] = check_minkowski_polynomiality(desc, bodies, desc.degree(), threshold, overflow_threshold);
  });
  std::vector<FitReport> out;
  for (std::size_t k = 0; k < descs.size(); ++k) {
    std::vector<FitReport> col;
    for (std::size_t t = 0; t < per.size(); ++t) {
      if (which[t] == k) col.push_back(per[t]);
    }
    if (!col.empty()) out.push_back(aggregate_reports("minkowski " + descs[k].name() + " d=" + std::to_string(d), col, threshold));
  }
  return out;
}

/// Degree law on `bodies` random bodies per descriptor. extras also carry
/// "lower_residual": the residual of a fit one degree below the law (report
/// only; a vanishing top form can make it small).
inline std::vector<FitReport> degree_law_batch(int d, int bodies, std::uint64_t seed, int threads = 1, double threshold = 1e-8) {
  std::vector<ValuationDescriptor> descs;
  for (int q = 0; q <= 2; ++q) descs.push_back(ValuationDescriptor::xi(1, q));
  descs.push_back(ValuationDescriptor::moment(1));
  descs.push_back(ValuationDescriptor::moment(2));
  descs.push_back(ValuationDescriptor::xi(0, 1));
  descs.push_back(ValuationDescriptor::xi(2, 0));
  descs.push_back(ValuationDescriptor::xi(2, 1));
  descs.push_back(ValuationDescriptor::xi(3, 0));
  if (d == 2) {
    descs.push_back(ValuationDescriptor::psi(1, 0));
    descs.push_back(ValuationDescriptor::psi(0, 1));
    descs.push_back(ValuationDescriptor::psi(2, 1));
    descs.push_back(ValuationDescriptor::psi(1, 2));
  }
  std::vector<std::vector<FitReport>> per(static_cast<std::size_t>(bodies));
  parallel_for(per.size(), threads, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    const Polytope p = random_test_body(rng, d);
    for (const auto& desc : descs) {
      FitReport r = check_degree_law(desc, p, threshold);
      if (desc.degree() > 0) {
        r.extras["lower_residual"] = translation_polynomial([&](const Polytope& k) { return evaluate(desc, k); }, p, desc.degree() - 1).relative_residual;
      }
      per[b].push_back(std::move(r));
    }
  });
  std::vector<FitReport> out;
  for (std::size_t k = 0; k < descs.size(); ++k) {
    std::vector<FitReport> col;
    for (const auto& row : per) col.push_back(row[k]);
    FitReport agg = aggregate_reports("degree law " + descs[k].name() + " d=" + std::to_string(d), col, threshold);
    agg.extras["degree"] = descs[k].degree();
    if (descs[k].degree() > 0) {
      double lowest = std::numeric_limits<double>::infinity();
      for (const auto& r : col) lowest = std::min(lowest, r.extras.at("lower_residual"));
      agg.extras["min_lower_residual"] = lowest;
    }
    out.push_back(std::move(agg));
  }
  return out;
}

/// xi(1,q) = (d + 2q) moment(q) on random bodies (divergence theorem).
inline std::vector<FitReport> xi_moment_identity_batch(int d, int bodies, std::uint64_t seed, int threads = 1, double threshold = 1e-9) {
  std::vector<FitReport> out;
  for (int q = 0; q <= 2; ++q) {
    std::vector<FitReport> per(static_cast<std::size_t>(bodies));
    parallel_for(per.size(), threads, [&](std::size_t b) {
      Rng rng = make_rng(seed, b);
      const Polytope p = random_test_body(rng, d);
      const double lhs = evaluate(ValuationDescriptor::xi(1, q), p);
      const double rhs = (d + 2 * q) * evaluate(ValuationDescriptor::moment(q), p);
      FitReport r;
      r.labels = {"xi", "moment"};
      r.coefficients = {lhs, rhs};
      r.relative_residual = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
      r.threshold = threshold;
      r.pass = r.relative_residual <= threshold;
      per[b] = r;
    });
    out.push_back(aggregate_reports("xi(1," + std::to_string(q) + ") = (d+2q) moment(" + std::to_string(q) + ") d=" + std::to_string(d), per, threshold));
  }
  return out;
}

/// Leading form of the translation polynomial of xi(p,q)^(j) against the
/// face-wise pairing, compared on the fit grid; p = 1 is excluded since its
/// top form is measured, not predicted.
inline std::vector<FitReport> leading_form_batch(int d, int bodies, std::uint64_t seed, int threads = 1, double threshold = 1e-8) {
  struct Case {
    int p, q, j;
  };
  std::vector<Case> cases{{2, 0, 0}, {0, 1, 0}, {2, 1, 0}, {3, 0, 0}};
  for (int j = 1; j <= d - 1; ++j) {
    cases.push_back({2, 0, j});
    cases.push_back({0, 1, j});
  }
  std::vector<std::vector<FitReport>> per(static_cast<std::size_t>(bodies));
  parallel_for(per.size(), threads, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    const Polytope p = random_test_body(rng, d);
    for (const auto& c : cases) {
      const auto desc = ValuationDescriptor::xi(c.p, c.q);
      const int degree = desc.degree();
      const TranslationFit fit = derivative_translation_polynomial(desc, c.j, p, degree);
      const MultiPoly predicted = xi_leading_form(c.p, c.q, c.j, p);
      FitReport r;
      r.relative_residual = relative_difference_on(fit.leading_form(), predicted, detail::chebyshev_grid(d, degree + 2, 1.0));
      r.threshold = threshold;
      r.extras["fit_residual"] = fit.relative_residual;
      r.pass = r.relative_residual <= threshold;
      per[b].push_back(r);
    }
  });
  std::vector<FitReport> out;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    std::vector<FitReport> col;
    for (const auto& row : per) col.push_back(row[k]);
    const auto& c = cases[k];
    out.push_back(aggregate_reports("leading form xi(" + std::to_string(c.p) + "," + std::to_string(c.q) + ")^(" + std::to_string(c.j) + ") d=" + std::to_string(d), col, threshold));
  }
  return out;
}

/// Rotation invariance of every family, and for psi(p,q) the reflection sign
/// (-1)^q, on random planar (or spatial) bodies.
inline std::vector<FitReport> invariance_batch(int d, int bodies, int max_degree, std::uint64_t seed, int threads = 1, double threshold = 1e-9) {
  std::vector<ValuationDescriptor> descs;
  if (d == 2) {
    for (int p = 0; p <= max_degree; ++p) {
      for (int q = 0; p + q <= max_degree; ++q) descs.push_back(ValuationDescriptor::psi(p, q));
    }
  }
  for (int p = 0; p <= 3; ++p) descs.push_back(ValuationDescriptor::xi(p, 1));
  descs.push_back(ValuationDescriptor::moment(1));
  std::vector<std::vector<FitReport>> per(static_cast<std::size_t>(bodies));
  parallel_for(per.size(), threads, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    const Polytope p = random_test_body(rng, d);
    std::vector<Mat> maps;
    for (int i = 0; i < 3; ++i) maps.push_back(random_rotation(rng, d));
    for (int i = 0; i < 3; ++i) maps.push_back(random_reflection(rng, d));
    for (const auto& desc : descs) per[b].push_back(check_invariance(desc, p, maps, threshold));
  });
  std::vector<FitReport> out;
  for (std::size_t k = 0; k < descs.size(); ++k) {
    std::vector<FitReport> col;
    for (const auto& row : per) col.push_back(row[k]);
    out.push_back(aggregate_reports("invariance " + descs[k].name() + " d=" + std::to_string(d), col, threshold));
  }
  return out;
}

}  // namespace rotval

// Acceptance run: one PASS/FAIL line per criterion, then a summary.
// Exit status is the number of failed criteria (0 when all pass).

#include "rotval/intgeo/experiments.hpp"
#include "rotval/io/json.hpp"
#include "rotval/verify/basis.hpp"
#include "rotval/verify/batch.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

using namespace rotval;
using V = ValuationDescriptor;

namespace {

// tolerances, pinned
constexpr double kFixtureTol = 1e-10;
constexpr double kIdentityTol = 1e-9;
constexpr double kAdditivityTol = 1e-9;
constexpr double kMinkowskiTol = 1e-8;
constexpr double kOverflowTol = 1e-6;
constexpr double kDegreeTol = 1e-8;
constexpr double kLeadingTol = 1e-8;
constexpr double kBasisTol = 1e-6;
constexpr double kSectionSigmas = 3.0;
constexpr double kNonnegTol = 1e-9;
constexpr double kClosedFormTol = 1e-8;
constexpr double kVanishingTol = 1e-12;
constexpr double kMonotoneTol = 1e-9;
constexpr double kReflectionTol = 1e-9;

// sizes and seeds, pinned
constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kPlanes = 100000;
constexpr int kSectionBodies = 6;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Polytope box(int d, double lo, double hi) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v[i] = (mask >> i) & 1 ? hi : lo;
    pts.push_back(v);
  }
  return build_polytope(pts, d);
}

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

bool all_pass(const std::vector<FitReport>& rs, double& worst) {
  bool ok = true;
  for (const auto& r : rs) {
    ok = ok && r.pass;
    worst = std::max(worst, r.relative_residual);
  }
  return ok;
}

const FitReport& find_report(const std::vector<FitReport>& rs, const std::string& prefix) {
  for (const auto& r : rs) {
    if (r.name.rfind(prefix, 0) == 0) return r;
  }
  throw std::logic_error("no report named " + prefix);
}

Outcome fixtures() {
  const Polytope sq = box(2, -1, 1);
  double worst = 0.0;
  worst = std::max(worst, rel(evaluate(V::xi(2, 0), sq), 8.0));
  worst = std::max(worst, rel(evaluate(V::xi(1, 1), sq), 32.0 / 3.0));
  worst = std::max(worst, rel(evaluate(V::moment(1), box(3, -1, 1)), 8.0));
  const auto c = steiner_coefficients(V::moment(0), sq).coeffs;
  const std::vector<double> want{4.0, 8.0, std::numbers::pi};
  for (std::size_t j = 0; j < want.size(); ++j) worst = std::max(worst, rel(c[j], want[j]));
  for (std::size_t j = want.size(); j < c.size(); ++j) worst = std::max(worst, std::abs(c[j]));
  return {worst <= kFixtureTol, "max relative error " + fmt(worst)};
}

Outcome xi_moment_identity() {
  double worst = 0.0;
  bool ok = true;
  for (int d : {2, 3}) ok = all_pass(xi_moment_identity_batch(d, 100, kSeed + d, 1, kIdentityTol), worst) && ok;
  return {ok, "100 bodies per d, q = 0..2, worst " + fmt(worst)};
}

Outcome additivity() {
  double worst = 0.0;
  bool ok = true;
  std::size_t families = 0;
  for (int d : {2, 3}) {
    const auto rs = additivity_batch(d, 200, kSeed + 10 + d, 1, kAdditivityTol);
    families += rs.size();
    ok = all_pass(rs, worst) && ok;
  }
  return {ok, std::to_string(families) + " family reports, 200 cuts each, worst " + fmt(worst)};
}

Outcome minkowski() {
  double worst = 0.0, overflow = 0.0;
  bool ok = true;
  for (int d : {2, 3}) {
    const auto rs = minkowski_batch(d, 50, kSeed + 20 + d, 1, kMinkowskiTol, kOverflowTol);
    ok = all_pass(rs, worst) && ok;
    for (const auto& r : rs) {
      if (r.extras.count("max_overflow")) overflow = std::max(overflow, r.extras.at("max_overflow"));
    }
  }
  return {ok, "50 tuples per d, worst residual " + fmt(worst) + ", worst overflow " + fmt(overflow)};
}

Outcome degree_laws() {
  double worst = 0.0;
  bool ok = true;
  bool degenerate = true;
  for (int d : {2, 3}) {
    const auto rs = degree_law_batch(d, 20, kSeed + 30 + d, 1, kDegreeTol);
    ok = all_pass(rs, worst) && ok;
    for (int q = 0; q <= 2; ++q) {
      const auto& r = find_report(rs, "degree law " + V::xi(1, q).name());
      degenerate = degenerate && r.pass && r.extras.at("degree") == 2 * q;
    }
    if (d == 2) {
      for (const auto& desc : {V::psi(1, 0), V::psi(0, 1)}) {
        const auto& r = find_report(rs, "degree law " + desc.name());
        degenerate = degenerate && r.pass && r.extras.at("degree") == 0;
      }
    }
  }
  return {ok && degenerate, "20 bodies per descriptor, worst " + fmt(worst) + (degenerate ? ", degenerate cases hold" : ", degenerate case failed")};
}

Outcome leading_form() {
  const Polytope sq = box(2, -1, 1);
  const TranslationFit fit = translation_polynomial(V::xi(2, 0), sq, 2);
  const MultiPoly expected = norm_squared_poly(2, 0, 2) * 4.0;
  const auto grid = detail::chebyshev_grid(2, 4, 1.0);
  const double square_err = std::max(relative_difference_on(fit.leading_form(), expected, grid), relative_difference_on(xi_leading_form(2, 0, 0, sq), expected, grid));
  double worst = 0.0;
  const bool ok = all_pass(leading_form_batch(2, 20, kSeed + 40, 1, kLeadingTol), worst);
  return {ok && square_err <= kLeadingTol, "square vs 4|x|^2 " + fmt(square_err) + ", 20 polygons worst " + fmt(worst)};
}

Outcome dimension_tables() {
  const auto o = dimension_table(5, 10, Group::O);
  const auto so = dimension_table(2, 10, Group::SO);
  bool spots = true;
  for (int d = 2; d <= 5; ++d) spots = spots && o.at(d, 0).cumulative == d + 1 && o.at(d, 1).increment == 0;
  spots = spots && so.at(2, 1).increment == 0;
  spots = spots && o.at(3, 2).cumulative == 10 && so.at(2, 2).cumulative == 8;
  return {o.consistent() && so.consistent() && spots, std::string("closed form vs enumeration ") + (o.consistent() && so.consistent() ? "agree" : "DISAGREE") + ", O'(3,2) = " + std::to_string(o.at(3, 2).cumulative) + ", O(2,2) = " + std::to_string(so.at(2, 2).cumulative)};
}

Outcome basis_membership() {
  struct Case {
    Group g;
    int d, ell;
  };
  const std::vector<Case> cases{{Group::O, 2, 0}, {Group::O, 2, 1}, {Group::O, 2, 2}, {Group::O, 2, 3}, {Group::SO, 2, 0}, {Group::SO, 2, 1}, {Group::SO, 2, 2}, {Group::O, 3, 0}, {Group::O, 3, 1}, {Group::O, 3, 2}};
  double worst_res = 0.0, worst_coef = 0.0;
  bool ok = true;
  std::size_t elements = 0;
  for (const auto& c : cases) {
    const auto basis = basis_enumeration(c.g, c.d, c.ell);
    Rng rng = make_rng(kSeed + 50, static_cast<std::uint64_t>(100 * c.d + 10 * c.ell + (c.g == Group::SO)));
    std::vector<Polytope> bodies;
    for (std::size_t i = 0; i < 2 * basis.size(); ++i) bodies.push_back(random_test_body(rng, c.d));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto r = fit_in_basis(basis_functional(basis[i]), c.d, c.ell, bodies, c.g);
      ++elements;
      ok = ok && r.pass;
      worst_res = std::max(worst_res, r.relative_residual);
      for (std::size_t j = 0; j < basis.size(); ++j) worst_coef = std::max(worst_coef, std::abs(r.coefficients[j] - (i == j ? 1.0 : 0.0)));
    }
  }
  Rng rng = make_rng(kSeed + 51, 0);
  std::vector<Polytope> bodies;
  for (int i = 0; i < 14; ++i) bodies.push_back(random_test_body(rng, 2));
  const auto shifted = fit_in_basis([](const Polytope& k) { return evaluate_on_parallel_body(V::xi(2, 0), k, 1.0); }, 2, 2, bodies, Group::O);
  ok = ok && worst_res <= kBasisTol && worst_coef <= kBasisTol && shifted.relative_residual <= kBasisTol;
  return {ok, std::to_string(elements) + " elements recovered, worst residual " + fmt(worst_res) + ", worst coefficient error " + fmt(worst_coef) + ", xi(2,0)(K+B) residual " + fmt(shifted.relative_residual)};
}

Outcome sections() {
  bool zero = true, fits = true, stable = true;
  double worst_ratio = 0.0, worst_disc = 0.0;
  int regressions = 0;
  for (int d : {2, 3}) {
    Rng rng = make_rng(kSeed + 60, static_cast<std::uint64_t>(d));
    std::vector<Polytope> bodies;
    for (int i = 0; i < kSectionBodies; ++i) bodies.push_back(random_test_body(rng, d));
    for (int k = 1; k < d; ++k) {
      for (SectionKind kind : {SectionKind::slice, SectionKind::project}) {
        const auto a = section_experiments(bodies, k, kPlanes, kSeed + 61, kind);
        const auto b = section_experiments(bodies, k, kPlanes, kSeed + 62, kind);
        for (std::size_t j = 0; j < a.size(); ++j) {
          if (static_cast<int>(j) > k + 2) {
            for (const auto* r : {&a[j], &b[j]}) {
              for (double y : r->estimates) zero = zero && y == 0.0;
            }
            continue;
          }
          ++regressions;
          for (const auto* r : {&a[j], &b[j]}) {
            // verdict: residual <= 3 sqrt(sum se^2) plus rounding
            fits = fits && r->pass && r->residual_bound <= kSectionSigmas * std::sqrt(std::inner_product(r->standard_errors.begin(), r->standard_errors.end(), r->standard_errors.begin(), 0.0)) * (1 + 1e-12) + 1e-12 * std::sqrt(std::inner_product(r->estimates.begin(), r->estimates.end(), r->estimates.begin(), 0.0));
            worst_ratio = std::max(worst_ratio, r->residual_norm / std::max(r->residual_bound, 1e-300));
          }
          const double disc = coefficient_discrepancy(a[j], b[j]);
          worst_disc = std::max(worst_disc, disc);
          stable = stable && disc <= kSectionSigmas;
        }
      }
    }
  }
  return {zero && fits && stable, std::to_string(regressions) + " regressions, j > k+2 " + (zero ? "exactly zero" : "NONZERO") + ", worst residual/bound " + fmt(worst_ratio) + ", worst seed discrepancy " + fmt(worst_disc) + " SE"};
}

Outcome nonnegativity() {
  bool ok = true;
  double worst_min = std::numeric_limits<double>::infinity(), closed = 0.0;
  double violations = 0.0;
  for (int q : {0, 1, 2}) {
    const auto r = nonneg_scan(q, 2, 1000, kSeed + 70 + q, 1, kNonnegTol);
    ok = ok && r.pass && r.counts.at("violations") == 0.0;
    violations += r.counts.at("violations");
    worst_min = std::min(worst_min, r.counts.at("min_coefficient"));
    const auto one = nonneg_scan(q, 1, 200, kSeed + 75 + q, 1, kNonnegTol);
    ok = ok && one.pass && one.counts.at("closed_form_deviation") <= 1e-12;
    closed = std::max(closed, one.counts.at("closed_form_deviation"));
  }
  return {ok, fmt(violations) + " violations over 3 x 1000 polygons, smallest coefficient " + fmt(worst_min) + ", d=1 closed-form deviation " + fmt(closed)};
}

Outcome mixed_coefficient() {
  auto dir = [](double deg) {
    const double t = deg * std::numbers::pi / 180.0;
    return make_vec({std::cos(t), std::sin(t)});
  };
  const auto fixture = mixed_moment({centered_segment(dir(0)), centered_segment(dir(30)), centered_segment(dir(60)), centered_segment(dir(90))});
  const double fixture_err = std::abs(fixture.coefficient - std::sqrt(3.0) / 6.0);
  const auto seg = segment_scan(500, kSeed + 80, true);
  const auto zon = zonotope_scan(200, kSeed + 81, 1, kNonnegTol);
  const double cf = seg.counts.at("max_closed_form_error");
  const double id = seg.counts.at("max_identity_residual");
  const bool ok = fixture_err <= kClosedFormTol && seg.pass && cf <= kClosedFormTol && id <= kVanishingTol && zon.pass;
  return {ok, "sqrt(3)/6 error " + fmt(fixture_err) + ", 500 quadruples closed-form error " + fmt(cf) + ", identity " + fmt(id) + ", zonotopes " + (zon.pass ? "nonnegative" : "NEGATIVE")};
}

Outcome monotonicity() {
  double first = 0.0;
  for (int d : {1, 2}) {
    for (int q : {0, 1, 2}) {
      for (BodyClass cls : {BodyClass::origin, BodyClass::symmetric}) first += static_cast<double>(monotonicity_scan(1, q, d, cls, 200, kSeed + 90 + q, 1, kMonotoneTol).violations.size());
    }
  }
  std::vector<MonotonicityViolation> found;
  double min_diff = std::numeric_limits<double>::infinity();
  for (int q : {0, 1, 2, 3}) {
    for (BodyClass cls : {BodyClass::origin, BodyClass::symmetric}) {
      const auto r = monotonicity_scan(2, q, 1, cls, 2000, kSeed + 95 + q, 1, kMonotoneTol);
      min_diff = std::min(min_diff, r.report.counts.at("min_difference"));
      found.insert(found.end(), r.violations.begin(), r.violations.end());
    }
  }
  bool archived = false;
  if (!found.empty()) {
    MonotonicityReport archive;
    archive.report.name = "monotonicity j=2 d=1 violations";
    archive.violations = found;
    std::ofstream("acceptance_monotonicity_violations.json") << io::dump(io::to_json(archive));
    archived = true;
  }
  return {first == 0.0 && archived, "j=1: " + fmt(first) + " violations; j=2 d=1: " + std::to_string(found.size()) + " violations over 16000 nested intervals, smallest outer-minus-inner " + fmt(min_diff) +
                                        (archived ? ", archived" : "; none exists since the derivative is a sum of nonnegative powers of the endpoints")};
}

Outcome reflection() {
  const auto rs = invariance_batch(2, 20, 5, kSeed + 100, 1, kReflectionTol);
  bool ok = true;
  int psi = 0;
  double worst = 0.0;
  for (const auto& r : rs) {
    if (r.name.find("psi") == std::string::npos) continue;
    ++psi;
    ok = ok && r.pass;
    worst = std::max(worst, r.relative_residual);
  }
  return {ok && psi == 21, std::to_string(psi) + " psi(p,q) with p+q <= 5 on 20 polygons, worst " + fmt(worst)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact fixtures", 1.0, fixtures},
      {2, "xi(1,q) = (d+2q) moment(q)", 30.0, xi_moment_identity},
      {3, "cut additivity", 60.0, additivity},
      {4, "Minkowski polynomial degree", 120.0, minkowski},
      {5, "translation degree laws", 60.0, degree_laws},
      {6, "leading form", 30.0, leading_form},
      {7, "dimension tables", 1.0, dimension_tables},
      {8, "basis membership", 120.0, basis_membership},
      {9, "section and projection formulas", 600.0, sections},
      {10, "Steiner coefficient nonnegativity", 60.0, nonnegativity},
      {11, "four-segment mixed coefficient", 120.0, mixed_coefficient},
      {12, "monotonicity", 60.0, monotonicity},
      {13, "psi reflection sign", 30.0, reflection},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s %2d %-34s %s [%.2f s of %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", too slow");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}

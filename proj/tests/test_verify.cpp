#include "catch2/catch_amalgamated.hpp"

#include "rotval/verify/basis.hpp"
#include "rotval/verify/checks.hpp"

using namespace rotval;
using Catch::Approx;
using V = ValuationDescriptor;

namespace {

Polytope square() { return build_polytope({make_vec({-1, -1}), make_vec({1, -1}), make_vec({1, 1}), make_vec({-1, 1})}, 2); }

std::vector<Polytope> random_bodies(Rng& rng, int d, int count) {
  std::vector<Polytope> out;
  std::uniform_int_distribution<int> nv(d + 1, d + 5);
  for (int i = 0; i < count; ++i) out.push_back(random_polytope(rng, d, nv(rng), 1.0, random_point_in_ball(rng, d, 0.5)));
  return out;
}

}  // namespace

TEST_CASE("dimension tables", "[verify]") {
  const auto o = dimension_table(5, 10, Group::O);
  REQUIRE(o.consistent());
  for (int d = 2; d <= 5; ++d) {
    REQUIRE(o.at(d, 0).cumulative == d + 1);
    REQUIRE(o.at(d, 1).increment == 0);
    for (int l = 1; l <= 10; ++l) REQUIRE(o.at(d, l).cumulative >= o.at(d, l - 1).cumulative);
  }
  REQUIRE(o.at(3, 2).increment == 6);
  REQUIRE(o.at(3, 2).cumulative == 10);
  REQUIRE(o.at(2, 0).cumulative == 3);
  const auto so = dimension_table(2, 10, Group::SO);
  REQUIRE(so.consistent());
  REQUIRE(so.at(2, 2).cumulative == 8);
  REQUIRE(so.at(2, 1).increment == 0);
  REQUIRE_THROWS(basis_level(Group::SO, 3, 2));
}

TEST_CASE("additivity", "[verify]") {
  SECTION("fixtures") {
    const auto r = check_additivity(V::xi(2, 0), square(), make_hyperplane(make_vec({1, 0}), 0.0));
    REQUIRE(r.pass);
    REQUIRE(r.coefficients[0] == Approx(8.0));
    REQUIRE(r.coefficients[1] == Approx(0.0).margin(1e-14));
    REQUIRE(r.coefficients[2] == Approx(4.0));
    REQUIRE(r.relative_residual < 1e-14);
    // the perimeter needs the two-sided slice
    const auto per = check_additivity(V::xi(0, 0), square(), make_hyperplane(make_vec({1, 0}), 0.3));
    REQUIRE(per.coefficients[1] == Approx(4.0));
    REQUIRE(per.pass);
  }
  SECTION("random cuts") {
    Rng rng = make_rng(12, 0);
    for (int d : {2, 3}) {
      std::vector<V> descs{V::moment(0), V::moment(2), V::xi(0, 0), V::xi(2, 0), V::xi(1, 1), V::xi(3, 1)};
      if (d == 2) {
        descs.push_back(V::psi(1, 2));
        descs.push_back(V::psi(2, 1));
        descs.push_back(V::psi(0, 3));
      }
      for (int trial = 0; trial < 10; ++trial) {
        const Polytope p = random_polytope(rng, d, d + 4, 1.0);
        const Hyperplane h = random_cutting_hyperplane(rng, p);
        for (const V& desc : descs) {
          INFO(desc.name());
          REQUIRE(check_additivity(desc, p, h).relative_residual <= 1e-9);
        }
      }
    }
  }
}

TEST_CASE("Minkowski polynomiality", "[verify]") {
  SECTION("single body volume is homogeneous") {
    Rng rng = make_rng(2, 0);
    const Polytope p = random_polytope(rng, 2, 6, 1.0);
    const auto r = check_minkowski_polynomiality(V::moment(0), {p}, 0);
    REQUIRE(r.pass);
    // phi(lambda K) = lambda^2 vol(K) = vol (t + 1)^2 / 4
    REQUIRE(r.coefficients[2] == Approx(volume(p) / 4.0).epsilon(1e-9));
  }
  SECTION("two squares") {
    const Polytope sq = square();
    const double c = std::cos(std::numbers::pi / 4), s = std::sin(std::numbers::pi / 4);
    Mat rot(2, 2);
    rot << c, -s, s, c;
    const auto r = check_minkowski_polynomiality(V::moment(1), {sq, transformed(sq, rot, Vec::Zero(2))}, 2);
    REQUIRE(r.relative_residual <= 1e-9);
    REQUIRE(r.extras.at("overflow") <= 1e-6);
  }
  SECTION("degree bound is sharp") {
    Rng rng = make_rng(3, 0);
    const auto bodies = random_bodies(rng, 2, 2);
    const auto low = check_minkowski_polynomiality(V::moment(2), bodies, 3);
    REQUIRE(low.relative_residual > 1e-6);
    REQUIRE(check_minkowski_polynomiality(V::moment(2), bodies, 4).pass);
  }
  SECTION("space") {
    Rng rng = make_rng(4, 0);
    const auto bodies = random_bodies(rng, 3, 2);
    REQUIRE(check_minkowski_polynomiality(V::xi(2, 0), bodies, 2).pass);
  }
}

TEST_CASE("invariance and the reflection sign law", "[verify]") {
  Rng rng = make_rng(5, 0);
  const Polytope p3 = random_polytope(rng, 3, 9, 1.0, make_vec({0.3, 0.1, -0.2}));
  std::vector<Mat> rotations;
  for (int i = 0; i < 20; ++i) rotations.push_back(random_rotation(rng, 3));
  REQUIRE(check_invariance(V::xi(2, 1), p3, rotations).pass);
  rotations.push_back(random_reflection(rng, 3));
  REQUIRE(check_invariance(V::xi(2, 1), p3, rotations).pass);

  const Polytope tri = random_polytope(rng, 2, 3, 1.0, make_vec({0.4, 0.3}));
  Mat mirror(2, 2);
  mirror << 1, 0, 0, -1;
  const auto odd = check_invariance(V::psi(2, 1), tri, {mirror});
  REQUIRE(odd.pass);
  REQUIRE(odd.coefficients[0] == Approx(-evaluate(V::psi(2, 1), tri)).epsilon(1e-9));
  REQUIRE(std::abs(odd.coefficients[0]) > 1e-3);
  const auto even = check_invariance(V::psi(2, 2), tri, {mirror});
  REQUIRE(even.pass);
  REQUIRE(even.coefficients[0] == Approx(evaluate(V::psi(2, 2), tri)).epsilon(1e-9));
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = 0.1;
  REQUIRE_THROWS_AS(check_invariance(V::psi(2, 2), tri, {bad}), GeometryError);
}

TEST_CASE("degree law checks", "[verify]") {
  Rng rng = make_rng(6, 0);
  const Polytope p = random_polytope(rng, 2, 6, 1.0);
  for (const V desc : {V::xi(1, 1), V::psi(1, 0), V::psi(2, 1), V::moment(2)}) {
    INFO(desc.name());
    const auto r = check_degree_law(desc, p);
    REQUIRE(r.pass);
  }
}

TEST_CASE("basis membership", "[verify]") {
  Rng rng = make_rng(7, 0);
  SECTION("O group in the plane") {
    const auto basis = basis_enumeration(Group::O, 2, 2);
    REQUIRE(basis.size() == 7);
    const auto bodies = random_bodies(rng, 2, 2 * static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      INFO(basis[i].name());
      const auto r = fit_in_basis(basis_functional(basis[i]), 2, 2, bodies, Group::O);
      REQUIRE(r.pass);
      for (std::size_t j = 0; j < basis.size(); ++j) REQUIRE(r.coefficients[j] == Approx(i == j ? 1.0 : 0.0).margin(1e-6));
    }
    const auto m = fit_in_basis([](const Polytope& k) { return evaluate(V::moment(1), k); }, 2, 2, bodies, Group::O);
    REQUIRE(m.pass);
    const auto idx = std::find(m.labels.begin(), m.labels.end(), "xi(1,1)") - m.labels.begin();
    REQUIRE(m.coefficients[static_cast<std::size_t>(idx)] == Approx(0.25).margin(1e-6));
    const auto shifted = fit_in_basis([](const Polytope& k) { return evaluate_on_parallel_body(V::xi(2, 0), k, 1.0); }, 2, 2, bodies, Group::O);
    REQUIRE(shifted.relative_residual <= 1e-6);
    // a degree-4 valuation is outside the span
    REQUIRE(fit_in_basis([](const Polytope& k) { return evaluate(V::moment(2), k); }, 2, 2, bodies, Group::O).relative_residual > 1e-4);
  }
  SECTION("SO group in the plane") {
    const auto basis = basis_enumeration(Group::SO, 2, 2);
    REQUIRE(basis.size() == 8);
    const auto bodies = random_bodies(rng, 2, 2 * static_cast<int>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i) {
      INFO(basis[i].name());
      const auto r = fit_in_basis(basis_functional(basis[i]), 2, 2, bodies, Group::SO);
      REQUIRE(r.pass);
      REQUIRE(r.coefficients[i] == Approx(1.0).margin(1e-6));
    }
  }
  SECTION("O group in space") {
    const auto basis = basis_enumeration(Group::O, 3, 2);
    REQUIRE(basis.size() == 10);
    const auto bodies = random_bodies(rng, 3, 2 * static_cast<int>(basis.size()));
    const auto r = fit_in_basis([](const Polytope& k) { return evaluate(V::moment(1), k); }, 3, 2, bodies, Group::O);
    REQUIRE(r.pass);
    const auto idx = std::find(r.labels.begin(), r.labels.end(), "xi(1,1)") - r.labels.begin();
    REQUIRE(r.coefficients[static_cast<std::size_t>(idx)] == Approx(0.2).margin(1e-6));
  }
  REQUIRE_THROWS_AS(fit_in_basis([](const Polytope&) { return 0.0; }, 2, 2, {square()}, Group::O), std::invalid_argument);
}

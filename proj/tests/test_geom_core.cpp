#include "catch2/catch_amalgamated.hpp"

#include "rotval/core/integrate.hpp"
#include "rotval/core/operations.hpp"
#include "rotval/core/oracle.hpp"
#include "rotval/core/random.hpp"

#include <boost/multiprecision/cpp_int.hpp>

using namespace rotval;
using Catch::Approx;

namespace {

Polytope square() { return build_polytope({make_vec({-1, -1}), make_vec({1, -1}), make_vec({1, 1}), make_vec({-1, 1})}, 2); }

Polytope cube(double lo, double hi) {
  std::vector<Vec> pts;
  for (int i = 0; i < 8; ++i) pts.push_back(make_vec({(i & 1) ? hi : lo, (i & 2) ? hi : lo, (i & 4) ? hi : lo}));
  return build_polytope(pts, 3);
}

MultiPoly norm2(int d) { return norm_squared_poly(d, 0, d); }

/// <s, n> in the boundary ring (s_1..s_d, n_1..n_d).
MultiPoly support_term(int d) { return dot_poly(2 * d, 0, d, d); }

}  // namespace

TEST_CASE("hull construction", "[geom-core]") {
  SECTION("interior point is removed") {
    const Polytope p = build_polytope({make_vec({-1, -1}), make_vec({1, -1}), make_vec({1, 1}), make_vec({-1, 1}), make_vec({0, 0})}, 2);
    REQUIRE(p.intrinsic_dim == 2);
    REQUIRE(p.facets.size() == 4);
    REQUIRE(p.vertices.size() == 4);
    for (const auto& v : p.vertices) REQUIRE(v.norm() > 1.0);
  }
  SECTION("triangle") {
    const Polytope p = build_polytope({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})}, 2);
    REQUIRE(p.facets.size() == 3);
    REQUIRE(volume(p) == Approx(0.5).epsilon(1e-14));
  }
  SECTION("collinear points give a segment") {
    const Polytope p = build_polytope({make_vec({0, 0, 0}), make_vec({1, 0, 0}), make_vec({2, 0, 0})}, 3);
    REQUIRE(p.intrinsic_dim == 1);
    REQUIRE(p.vertices.size() == 2);
    REQUIRE(relative_volume(p) == Approx(2.0));
  }
  SECTION("four-cube") {
    std::vector<Vec> pts;
    for (int i = 0; i < 16; ++i) pts.push_back(make_vec({(i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0, (i & 4) ? 1.0 : -1.0, (i & 8) ? 1.0 : -1.0}));
    const Polytope p = build_polytope(pts, 4);
    REQUIRE(p.facets.size() == 8);
    REQUIRE(volume(p) == Approx(16.0).epsilon(1e-12));
  }
  SECTION("errors") {
    REQUIRE_THROWS_AS(build_polytope({}, 2), GeometryError);
    REQUIRE_THROWS_AS(build_polytope({make_vec({0, 0}), make_vec({1, 0, 0})}, 2), GeometryError);
    REQUIRE_THROWS_AS(build_polytope({make_vec({0, 0, 0, 0, 0})}, 5), GeometryError);
  }
}

TEST_CASE("facet structure invariants on random bodies", "[geom-core][property]") {
  Rng rng = make_rng(11, 0);
  for (int d = 2; d <= 4; ++d) {
    for (int trial = 0; trial < 10; ++trial) {
      const Polytope p = random_origin_polytope(rng, d, d + 6);
      for (const auto& f : p.facets) {
        REQUIRE(std::abs(f.normal.norm() - 1.0) <= 1e-12);
        for (const auto& v : p.vertices) REQUIRE(v.dot(f.normal) <= f.offset + 1e-10);
        for (int i : f.vertices) REQUIRE(p.vertices[static_cast<std::size_t>(i)].dot(f.normal) == Approx(f.offset).margin(1e-10));
      }
      // triangulation volume equals the facet-pyramid volume about the origin
      double pyramid = 0.0;
      for (const auto& f : p.facets) pyramid += f.offset * facet_measure(p, f) / d;
      REQUIRE(volume(p) == Approx(pyramid).epsilon(1e-9));
    }
  }
}

TEST_CASE("three-dimensional hull matches brute-force enumeration", "[geom-core][property]") {
  Rng rng = make_rng(314, 0);
  auto check = [](const std::vector<Vec>& pts) {
    const Polytope p = build_polytope(pts, 3);
    Mat basis = p.basis;
    std::vector<Vec> y;
    for (const auto& v : pts) y.push_back(basis.transpose() * (v - p.origin));
    const auto brute = detail::brute_force_facets(y, 1e-10);
    REQUIRE(p.facets.size() == brute.size());
    double pyramid = 0.0;
    for (const auto& f : p.facets) pyramid += (f.offset - f.normal.dot(p.origin)) * facet_measure(p, f) / 3.0;
    REQUIRE(volume(p) == Approx(pyramid).epsilon(1e-9));
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec> pts;
    for (int i = 0; i < 25; ++i) pts.push_back(random_point_in_ball(rng, 3, 1.0));
    check(pts);
  }
  // many coplanar points: Minkowski sum of two cubes and a tilted square
  const Polytope c = cube(-1, 1);
  const Polytope sq = build_polytope({make_vec({0, 0, 0}), make_vec({1, 0.5, 0}), make_vec({0.5, 1.5, 0.2}), make_vec({-0.5, 1, 0.2})}, 3);
  const Polytope sum = minkowski_sum(minkowski_sum(c, scaled(c, 0.5)), sq);
  std::vector<Vec> pts = sum.vertices;
  check(pts);
  REQUIRE(volume(sum) > 27.0);
}

TEST_CASE("exact polynomial integration", "[geom-core]") {
  const Polytope tri = build_polytope({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})}, 2);
  const MultiPoly xy = MultiPoly::variable(2, 0) * MultiPoly::variable(2, 1);
  REQUIRE(integrate_polynomial(tri, xy) == Approx(1.0 / 24.0).epsilon(1e-14));
  REQUIRE(integrate_polynomial(cube(0, 1), MultiPoly::constant(3, 1.0)) == Approx(1.0).epsilon(1e-14));

  SECTION("rational arithmetic is exact") {
    using Rational = boost::multiprecision::cpp_rational;
    using RPoly = BasicMultiPoly<Rational>;
    const RPoly f = RPoly::variable(2, 0) * RPoly::variable(2, 1);
    REQUIRE(integrate_polynomial_exact<Rational>(tri, f) == Rational(1, 24));
    const RPoly g = RPoly::variable(3, 0).pow(2) * RPoly::variable(3, 2) + RPoly::constant(3, Rational(3));
    // over [0,1]^3: 1/3 * 1/2 + 3
    REQUIRE(integrate_polynomial_exact<Rational>(cube(0, 1), g) == Rational(19, 6));
  }
  SECTION("lower-dimensional body is rejected") {
    const Polytope seg = build_polytope({make_vec({0, 0}), make_vec({1, 1})}, 2);
    REQUIRE_THROWS_AS(integrate_polynomial(seg, xy), GeometryError);
  }
  SECTION("agrees with the Monte Carlo oracle on a random polygon") {
    Rng rng = make_rng(3, 1);
    const Polytope p = random_polytope(rng, 2, 7);
    const MultiPoly f = norm2(2);
    const Estimate mc = monte_carlo_oracle(p, OracleTarget::interior(f), 1'000'000, 99);
    REQUIRE(std::abs(integrate_polynomial(p, f) - mc.value) <= 3.0 * mc.standard_error);
  }
}

TEST_CASE("boundary integrals", "[geom-core]") {
  REQUIRE(boundary_integral(cube(0, 1), MultiPoly::constant(6, 1.0)) == Approx(6.0).epsilon(1e-13));
  REQUIRE(boundary_integral(square(), support_term(2).pow(2)) == Approx(8.0).epsilon(1e-13));

  SECTION("codimension conventions") {
    const Polytope seg = build_polytope({make_vec({0, 0}), make_vec({2, 0})}, 2);
    // both normals count: 2 * length
    REQUIRE(boundary_integral(seg, MultiPoly::constant(4, 1.0)) == Approx(4.0));
    const Polytope pt = build_polytope({make_vec({0.3, 0.2})}, 2);
    REQUIRE(boundary_integral(pt, MultiPoly::constant(4, 1.0)) == 0.0);
    const Polytope seg3 = build_polytope({make_vec({0, 0, 0}), make_vec({1, 0, 0})}, 3);
    REQUIRE(boundary_integral(seg3, MultiPoly::constant(6, 1.0)) == 0.0);
  }
  SECTION("divergence theorem on random bodies") {
    Rng rng = make_rng(5, 2);
    for (int d = 2; d <= 4; ++d) {
      for (int trial = 0; trial < 8; ++trial) {
        const Polytope p = random_polytope(rng, d, d + 5, 1.0, random_point_in_ball(rng, d, 0.5));
        REQUIRE(boundary_integral(p, support_term(d)) == Approx(d * volume(p)).epsilon(1e-9));
      }
    }
  }
  SECTION("agrees with the Monte Carlo oracle on a random 3-polytope") {
    Rng rng = make_rng(8, 3);
    const Polytope p = random_polytope(rng, 3, 9, 1.0, make_vec({0.2, -0.1, 0.3}));
    const MultiPoly g = norm_squared_poly(6, 0, 3) * support_term(3);
    const Estimate mc = monte_carlo_oracle(p, OracleTarget::boundary(g), 1'000'000, 1234);
    REQUIRE(std::abs(boundary_integral(p, g) - mc.value) <= 3.0 * mc.standard_error);
  }
}

TEST_CASE("Minkowski sums", "[geom-core]") {
  const Polytope a = build_polytope({make_vec({0, 0}), make_vec({1, 0})}, 2);
  const Polytope b = build_polytope({make_vec({0, 0}), make_vec({0, 1})}, 2);
  const Polytope unit = minkowski_sum(a, b);
  REQUIRE(unit.intrinsic_dim == 2);
  REQUIRE(volume(unit) == Approx(1.0));

  const Polytope pt = build_polytope({make_vec({0.5, -2})}, 2);
  const Polytope moved = minkowski_sum(square(), pt);
  REQUIRE(volume(moved) == Approx(4.0));
  REQUIRE(support_value(moved, make_vec({0, 1})) == Approx(-1.0));

  const Polytope twice = minkowski_sum(square(), square());
  REQUIRE(volume(twice) == Approx(16.0));

  SECTION("support function is additive") {
    Rng rng = make_rng(21, 0);
    for (int d = 2; d <= 3; ++d) {
      const Polytope p = random_polytope(rng, d, 6);
      const Polytope q = random_polytope(rng, d, 5, 0.7, random_point_in_ball(rng, d, 1.0));
      const Polytope s = minkowski_sum(p, q);
      for (int i = 0; i < 100; ++i) {
        const Vec u = random_unit_vector(rng, d);
        REQUIRE(support_value(s, u) == Approx(support_value(p, u) + support_value(q, u)).epsilon(1e-9).margin(1e-12));
      }
    }
  }
  REQUIRE_THROWS_AS(minkowski_sum(square(), cube(0, 1)), GeometryError);
}

TEST_CASE("hyperplane splits", "[geom-core]") {
  SECTION("square through the middle") {
    const auto parts = split_by_hyperplane(square(), make_hyperplane(make_vec({1, 0}), 0.0));
    REQUIRE(volume(parts.positive) == Approx(2.0));
    REQUIRE(volume(parts.negative) == Approx(2.0));
    REQUIRE(parts.slice.intrinsic_dim == 1);
    REQUIRE(relative_volume(parts.slice) == Approx(2.0));
  }
  SECTION("tangent along a facet") {
    const auto parts = split_by_hyperplane(square(), make_hyperplane(make_vec({0, 1}), 1.0));
    REQUIRE(volume(parts.negative) == Approx(4.0));
    REQUIRE(parts.positive.intrinsic_dim == 1);
    REQUIRE(parts.slice.intrinsic_dim == 1);
    REQUIRE(relative_volume(parts.slice) == Approx(2.0));
  }
  SECTION("missing hyperplane") {
    const auto parts = split_by_hyperplane(square(), make_hyperplane(make_vec({0, 1}), 3.0));
    REQUIRE(volume(parts.negative) == Approx(4.0));
    REQUIRE(parts.positive.empty());
    REQUIRE(parts.slice.empty());
  }
  SECTION("measure is additive for random simplices") {
    Rng rng = make_rng(4, 4);
    for (int d = 2; d <= 4; ++d) {
      for (int trial = 0; trial < 20; ++trial) {
        const Polytope p = random_polytope(rng, d, d + 1);
        const auto parts = split_by_hyperplane(p, random_cutting_hyperplane(rng, p));
        REQUIRE(volume(parts.positive) + volume(parts.negative) == Approx(volume(p)).epsilon(1e-12));
        REQUIRE(parts.slice.intrinsic_dim == d - 1);
      }
    }
  }
  REQUIRE_THROWS_AS(make_hyperplane(make_vec({1, 1}), 0.0), GeometryError);
}

TEST_CASE("slices and projections", "[geom-core]") {
  const Polytope c = cube(-1, 1);
  Mat frame = Mat::Zero(3, 2);
  frame(0, 0) = 1;
  frame(1, 1) = 1;
  const auto sl = slice_or_project(c, Vec::Zero(3), frame, SectionMode::slice);
  REQUIRE(sl.body.dim == 2);
  REQUIRE(volume(sl.body) == Approx(4.0));
  REQUIRE(support_value(sl.body, make_vec({1, 0})) == Approx(1.0));
  const auto pr = slice_or_project(c, Vec::Zero(3), frame, SectionMode::project);
  REQUIRE(volume(pr.body) == Approx(4.0));
  const auto miss = slice_or_project(c, make_vec({0, 0, 5}), frame, SectionMode::slice);
  REQUIRE(miss.body.empty());

  Mat line = Mat::Zero(3, 1);
  line(2, 0) = 1;
  const auto chord = slice_or_project(c, make_vec({0.5, 0.5, 0}), line, SectionMode::slice);
  REQUIRE(relative_volume(chord.body) == Approx(2.0));

  Mat bad = frame;
  bad(0, 1) = 0.1;
  REQUIRE_THROWS_AS(slice_or_project(c, Vec::Zero(3), bad, SectionMode::slice), GeometryError);
  REQUIRE_THROWS_AS(slice_or_project(c, Vec::Zero(3), Mat::Identity(3, 3), SectionMode::slice), GeometryError);

  SECTION("slices agree with hyperplane splits") {
    Rng rng = make_rng(6, 6);
    const Polytope p = random_polytope(rng, 3, 10);
    const Vec n = random_unit_vector(rng, 3);
    Mat full = random_rotation(rng, 3);
    full.col(2) = n;
    Eigen::HouseholderQR<Mat> qr(full);
    Mat q = qr.householderQ() * Mat::Identity(3, 3);
    const Vec normal = q.col(0);
    const Mat plane = q.rightCols(2);
    const Vec z = 0.1 * normal;
    const auto s = slice_or_project(p, z, plane, SectionMode::slice);
    const auto parts = split_by_hyperplane(p, make_hyperplane(normal, 0.1));
    REQUIRE(volume(s.body) == Approx(relative_volume(parts.slice)).epsilon(1e-10));
  }
}

TEST_CASE("Monte Carlo oracle", "[geom-core]") {
  const Polytope sq = square();
  const Estimate area = monte_carlo_oracle(sq, OracleTarget::interior(MultiPoly::constant(2, 1.0)), 1'000'000, 1);
  REQUIRE(std::abs(area.value - 4.0) <= 3.0 * std::max(area.standard_error, 1e-15));
  const Estimate m = monte_carlo_oracle(sq, OracleTarget::interior(norm2(2)), 1'000'000, 2);
  REQUIRE(std::abs(m.value - 8.0 / 3.0) <= 3.0 * m.standard_error);

  SECTION("standard error scales like one over root n") {
    const Polytope tri = build_polytope({make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})}, 2);
    const Estimate a = monte_carlo_oracle(tri, OracleTarget::interior(norm2(2)), 100'000, 7);
    const Estimate b = monte_carlo_oracle(tri, OracleTarget::interior(norm2(2)), 400'000, 8);
    REQUIRE(b.standard_error == Approx(a.standard_error / 2.0).epsilon(0.2));
  }
  SECTION("reproducible and thread-count independent") {
    const auto t = OracleTarget::boundary(support_term(2));
    const Estimate a = monte_carlo_oracle(sq, t, 100'000, 42, 1);
    const Estimate b = monte_carlo_oracle(sq, t, 100'000, 42, 1);
    const Estimate c = monte_carlo_oracle(sq, t, 100'000, 42, 3);
    REQUIRE(a.value == b.value);
    REQUIRE(a.value == c.value);
    REQUIRE(a.standard_error == c.standard_error);
  }
  REQUIRE_THROWS(monte_carlo_oracle(sq, OracleTarget::interior(norm2(2)), 10, 1));
}

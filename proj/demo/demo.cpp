// Walk through the library on the bodies in demo/bodies.
//   rotval_demo [bodies-dir]

#include "rotval/intgeo/experiments.hpp"
#include "rotval/io/json.hpp"
#include "rotval/verify/basis.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

using namespace rotval;
using V = ValuationDescriptor;

namespace {

Polytope load(const std::filesystem::path& dir, const char* name) { return io::polytope_from_json(io::parse_json(io::read_text_file((dir / name).string()), name), name); }

void print_poly(const char* label, const EpsilonPolynomial& e) {
  std::printf("  %-22s", label);
  for (double c : e.coeffs) std::printf(" %10.6f", c);
  std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : ROTVAL_DEMO_BODIES;
  try {
    const Polytope square = load(dir, "square.json");
    const Polytope cube = load(dir, "cube.json");
    const Polytope triangle = load(dir, "triangle.json");
    const Polytope segment = load(dir, "segment.json");
    const Polytope interval = load(dir, "interval.json");

    std::printf("values on [-1,1]^2\n");
    for (const auto& d : {V::moment(0), V::moment(1), V::xi(0, 0), V::xi(2, 0), V::xi(1, 1), V::psi(1, 1)}) std::printf("  %-10s %.12g\n", d.name().c_str(), evaluate(d, square));
    std::printf("  moment(1) on [-1,1]^3 = %.12g\n", evaluate(V::moment(1), cube));

    std::printf("\neps-coefficients c_j of phi(K + eps B)\n");
    print_poly("vol, square", steiner_coefficients(V::moment(0), square));
    print_poly("xi(2,0), triangle", steiner_coefficients(V::xi(2, 0), triangle));
    print_poly("moment(1), segment", steiner_coefficients(V::moment(1), segment));
    print_poly("moment(1), interval", steiner_coefficients(V::moment(1), interval));
    const SteinerFit fit = steiner_coefficients_fit(V::xi(2, 0), triangle);
    print_poly("same, quadrature fit", fit.polynomial);

    std::printf("\ntranslation polynomial of xi(2,0) on the square, x -> xi(2,0)(K + x)\n");
    const TranslationFit t = translation_polynomial(V::xi(2, 0), square, 2);
    for (const auto& [e, c] : t.polynomial.terms()) {
      if (std::abs(c) > 1e-12) std::printf("  x^(%d,%d)  %.6f\n", e[0], e[1], c);
    }
    std::printf("  relative residual %.2e\n", t.relative_residual);

    std::printf("\ndimensions of O(3)-invariant valuations by degree\n ");
    const auto table = dimension_table(3, 6, Group::O);
    for (int ell = 0; ell <= 6; ++ell) std::printf(" %ld", table.at(3, ell).cumulative);
    std::printf("   (closed form %s enumeration)\n", table.consistent() ? "matches" : "differs from");

    std::printf("\nline sections of four polygons, 20000 planes each\n");
    const auto reports = section_experiments({square, triangle, scaled(triangle, 0.6), translated(square, make_vec({0.3, -0.2}))}, 1, 20000, 7, SectionKind::slice);
    for (const auto& r : reports) {
      std::printf("  %-22s residual %.3g (bound %.3g) %s", r.name.c_str(), r.residual_norm, r.residual_bound, r.pass ? "ok" : "FAIL");
      for (std::size_t i = 0; i < r.coefficients.size(); ++i) std::printf("  %s = %.4f +- %.4f", r.labels[i].c_str(), r.coefficients[i], r.coefficient_errors[i]);
      std::printf("\n");
    }

    std::printf("\nmixed coefficient of four unit segments at 0, 30, 60, 90 degrees\n");
    std::vector<Polytope> segs;
    for (double deg : {0.0, 30.0, 60.0, 90.0}) segs.push_back(centered_segment(make_vec({std::cos(deg * std::numbers::pi / 180), std::sin(deg * std::numbers::pi / 180)})));
    const auto m = mixed_moment(segs);
    std::printf("  fitted %.12f, closed form %.12f, sqrt(3)/6 = %.12f\n", m.coefficient, m.closed_form, std::sqrt(3.0) / 6.0);
  } catch (const std::exception& e) {
    std::cerr << "demo: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "pdwg/manufactured.hpp"
#include "pdwg/quadrature.hpp"

using namespace pdwg;

TEST_CASE("cell rule: constants and low-order monomials") {
  const Mesh mesh = build_unit_cube_mesh(1);
  const Element& el = mesh.elements[0];

  const QuadratureRule r1 = cell_rule(el, 1);
  CHECK(r1.integrate([](const Vec3&) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-14));

  const QuadratureRule r2 = cell_rule(el, 2);
  CHECK(r2.integrate([](const Vec3& p) { return p.x * p.y * p.z; }) ==
        doctest::Approx(1.0 / 8.0).epsilon(1e-14));

  const double pi = std::numbers::pi;
  const double expected = std::pow(2.0 / pi, 3);
  const auto sines = [pi](const Vec3& p) {
    return std::sin(pi * p.x) * std::sin(pi * p.y) * std::sin(pi * p.z);
  };
  // Gauss-6 lands at ~2e-10 absolute error for this integrand; one more
  // point per axis brings it below 1e-12.
  CHECK(std::abs(cell_rule(el, 6).integrate(sines) - expected) < 1e-9);
  CHECK(std::abs(cell_rule(el, 7).integrate(sines) - expected) < 1e-12);

  CHECK_THROWS_AS(cell_rule(el, 0), Error);
}

TEST_CASE("face rule: measure and monomials") {
  const Mesh mesh = build_unit_cube_mesh(1);
  for (const Face& f : mesh.faces) {
    const QuadratureRule r = face_rule(f, mesh, 3);
    CHECK(r.integrate([](const Vec3&) { return 1.0; }) ==
          doctest::Approx(f.area).epsilon(1e-14));
  }
  // Bottom face z = 0: integral of x*y over the unit square.
  const Element& el = mesh.elements[0];
  const Face& bottom = mesh.faces[el.face_ids[4]];
  const QuadratureRule r = face_rule(bottom, mesh, 2);
  CHECK(r.integrate([](const Vec3& p) { return p.x * p.y; }) ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(face_rule(bottom, mesh, 0), Error);
}

TEST_CASE("exactness property on random monomials") {
  std::mt19937 rng(20240811);
  std::uniform_int_distribution<int> order(1, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const int q = order(rng);
    const auto fx = oracle::random_box(rng);
    const Element& el = fx.element();
    std::uniform_int_distribution<int> degree(0, 2 * q - 1);
    const int a = degree(rng), b = degree(rng), c = degree(rng);

    const auto monomial_integral = [](double lo, double hi, int d) {
      return (std::pow(hi, d + 1) - std::pow(lo, d + 1)) / (d + 1);
    };
    const double exact = monomial_integral(el.lo.x, el.hi.x, a) *
                         monomial_integral(el.lo.y, el.hi.y, b) *
                         monomial_integral(el.lo.z, el.hi.z, c);
    const QuadratureRule rule = cell_rule(el, q);
    const double computed = rule.integrate([&](const Vec3& p) {
      return std::pow(p.x, a) * std::pow(p.y, b) * std::pow(p.z, c);
    });
    CHECK(computed == doctest::Approx(exact).epsilon(1e-12));

    double weight_sum = 0.0;
    for (double w : rule.weights) {
      CHECK(w > 0.0);
      weight_sum += w;
    }
    CHECK(weight_sum == doctest::Approx(el.volume).epsilon(1e-13));
  }
}

TEST_CASE("face weights sum to the area and stay positive") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fx = oracle::random_box(rng);
    for (const Face& f : fx.mesh.faces) {
      const QuadratureRule rule = face_rule(f, fx.mesh, 4);
      double sum = 0.0;
      for (double w : rule.weights) {
        CHECK(w > 0.0);
        sum += w;
      }
      CHECK(sum == doctest::Approx(f.area).epsilon(1e-13));
    }
  }
}

TEST_CASE("boundary data integral against refined quadrature") {
  // <u2 x n, e_b> on a face of the n=2 cube, checked against panel-refined
  // integration of the same integrand.
  const Mesh mesh = build_unit_cube_mesh(2);
  const ManufacturedSolution& sol = manufactured_solution(Solution::U2);
  const auto bases = face_bases(mesh);
  int checked = 0;
  for (const Face& f : mesh.faces) {
    if (!f.is_boundary() || checked >= 3) continue;
    ++checked;
    const Element& el = mesh.elements[f.adjacent_elements[0]];
    Vec3 n;
    for (int lf = 0; lf < 6; ++lf)
      if (el.face_ids[lf] == f.id) n = el.outward_normals[lf];
    for (int k = 0; k < 2; ++k) {
      const Vec3 e = bases[f.id].e(k);
      const auto integrand = [&](const Vec3& p) { return dot(sol.chi(p, n), e); };
      const double refined = oracle::checked_face_integral(f, mesh, integrand);
      const QuadratureRule rule = face_rule(f, mesh, 4);
      CHECK(rule.integrate(integrand) == doctest::Approx(refined).epsilon(1e-10));
    }
  }
  CHECK(checked == 3);
}

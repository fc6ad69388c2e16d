#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pdwg/weak_calculus.hpp"

using namespace pdwg;

TEST_CASE("tangential basis for the canonical +z face") {
  const TangentialBasis tb = tangential_basis({0, 0, 1});
  CHECK((tb.e1 - Vec3{0, -1, 0}).norm() == doctest::Approx(0.0));
  CHECK((tb.e2 - Vec3{-1, 0, 0}).norm() == doctest::Approx(0.0));
}

TEST_CASE("tangential basis properties on random normals") {
  std::mt19937 rng(42);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Vec3 n{gauss(rng), gauss(rng), gauss(rng)};
    if (n.norm() < 1e-3) continue;
    n = n.normalized();
    const TangentialBasis tb = tangential_basis(n);
    CHECK(std::abs(dot(tb.e1, n)) <= 1e-12);
    CHECK(std::abs(dot(tb.e2, n)) <= 1e-12);
    CHECK(tb.e1.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tb.e2.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(dot(tb.e1, tb.e2)) <= 1e-12);
    // {e1, e2, n} spans R^3: Gram determinant is +-1.
    const double det = dot(tb.e1, cross(tb.e2, n));
    CHECK(std::abs(std::abs(det) - 1.0) <= 1e-12);
    // e_bn stays tangential and unit for both side normals.
    for (double side : {1.0, -1.0})
      for (int k = 0; k < 2; ++k) {
        const Vec3 ebn = tb.e_bn(k, side * n);
        CHECK(std::abs(dot(ebn, n)) <= 1e-12);
        CHECK(ebn.norm() == doctest::Approx(1.0).epsilon(1e-12));
      }
  }
  CHECK_THROWS_AS(tangential_basis({0, 0, 0}), Error);
}

TEST_CASE("weak operator table on the unit cube element") {
  const Mesh mesh = build_unit_cube_mesh(1);
  const auto bases = face_bases(mesh);
  const WeakOperatorTable table = weak_operator_table(mesh.elements[0], mesh, bases);

  CHECK(table.grad_cell.norm() == 0.0);
  for (int k = 0; k < 3; ++k) CHECK(table.curl_cell[k].norm() == 0.0);

  // +x face (local slot 1): |sigma| n / |T| = (1,0,0).
  CHECK((table.grad_face[1] - Vec3{1, 0, 0}).norm() <= 1e-14);
  // Constant weak function: the face gradients cancel over a closed element.
  Vec3 sum{0, 0, 0};
  for (int lf = 0; lf < 6; ++lf) sum += table.grad_face[lf];
  CHECK(sum.norm() <= 1e-12);
}

TEST_CASE("defining equations of the weak operators by quadrature") {
  // (grad_w v, phi)_T = -(v0, div phi)_T + <v_b, phi.n> and
  // (curl_w v, phi)_T = (v0, curl phi)_T - <v_b x n, phi> for all constant
  // phi, with every integral evaluated by quadrature rules.
  std::mt19937 rng(20240812);
  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int trial = 0; trial < 100; ++trial) {
    const auto fx = oracle::random_box(rng);
    const Element& el = fx.element();
    const auto bases = face_bases(fx.mesh);
    const WeakOperatorTable table = weak_operator_table(el, fx.mesh, bases);
    const QuadratureRule cell = cell_rule(el, 2);
    const double scale = 1.0;

    for (int i = 0; i < 6; ++i) {
      const Face& face = fx.mesh.faces[el.face_ids[i]];
      const Vec3& n = el.outward_normals[i];
      const QuadratureRule frule = face_rule(face, fx.mesh, 2);
      for (int j = 0; j < 3; ++j) {
        const Vec3 phi = axes[j];
        // Scalar basis {0, 1_{b,i}}: weak gradient against phi.
        const double lhs_grad = cell.integrate(
            [&](const Vec3&) { return dot(table.grad_face[i], phi); });
        const double rhs_grad = frule.integrate([&](const Vec3&) { return dot(phi, n); });
        CHECK(lhs_grad == doctest::Approx(rhs_grad).epsilon(1e-12).scale(scale));

        // Vector basis {0, e^k_{b,i}}: weak curl against phi.
        for (int k = 0; k < 2; ++k) {
          const double lhs_curl = cell.integrate(
              [&](const Vec3&) { return dot(table.curl_face[i][k], phi); });
          const Vec3 vb = bases[face.id].e(k);
          const double rhs_curl =
              -frule.integrate([&](const Vec3&) { return dot(cross(vb, n), phi); });
          CHECK(lhs_curl == doctest::Approx(rhs_curl).epsilon(1e-12).scale(scale));
        }
      }
    }
    // Interior bases {1, 0} and {e^k, 0} have vanishing weak operators
    // because constant test functions have zero divergence and curl.
    CHECK(table.grad_cell.norm() == 0.0);
  }
}

TEST_CASE("consistent constant weak vector functions have zero weak curl") {
  // v = {c, v_b} with v_b the tangential part of the same constant c makes
  // v_b x n = c x n on every face; the weak curl then cancels over the
  // closed element boundary.
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto fx = oracle::random_box(rng);
    const Element& el = fx.element();
    const auto bases = face_bases(fx.mesh);
    const WeakOperatorTable table = weak_operator_table(el, fx.mesh, bases);
    const Vec3 c{coef(rng), coef(rng), coef(rng)};
    Vec3 curl_w{0, 0, 0};  // cell part contributes nothing (curl_cell = 0)
    for (int i = 0; i < 6; ++i) {
      const TangentialBasis& tb = bases[el.face_ids[i]];
      for (int k = 0; k < 2; ++k)
        curl_w += dot(c, tb.e(k)) * table.curl_face[i][k];
    }
    CHECK(curl_w.norm() <= 1e-12 * (1.0 + c.norm()));
  }
}

TEST_CASE("weak curl consistency with the full defining identity") {
  // For a generic weak vector function v = {v0, v_b}, (curl_w v, phi)_T
  // must equal (v0, curl phi)_T - <v_b x n, phi>_dT = -<v_b x n, phi>_dT.
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto fx = oracle::random_box(rng);
    const Element& el = fx.element();
    const auto bases = face_bases(fx.mesh);
    const WeakOperatorTable table = weak_operator_table(el, fx.mesh, bases);

    Vec3 v0{coef(rng), coef(rng), coef(rng)};
    std::array<std::array<double, 2>, 6> vb;
    for (auto& f : vb) f = {coef(rng), coef(rng)};

    Vec3 curl_w{0, 0, 0};
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 2; ++k) curl_w += vb[i][k] * table.curl_face[i][k];

    const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const Vec3& phi : axes) {
      const double lhs = dot(curl_w, phi) * el.volume;
      double rhs = 0.0;
      for (int i = 0; i < 6; ++i) {
        const Face& face = fx.mesh.faces[el.face_ids[i]];
        const Vec3 vb_vec = vb[i][0] * bases[face.id].e(0) + vb[i][1] * bases[face.id].e(1);
        const QuadratureRule frule = face_rule(face, fx.mesh, 2);
        rhs -= frule.integrate([&](const Vec3&) {
          return dot(cross(vb_vec, el.outward_normals[i]), phi);
        });
      }
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}

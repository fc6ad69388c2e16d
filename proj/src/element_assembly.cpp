#include "pdwg/element_assembly.hpp"

#include <cmath>

namespace pdwg {

Permittivity Permittivity::identity(std::size_t n_elements) {
  return constant(n_elements, Mat3::identity());
}

Permittivity Permittivity::constant(std::size_t n_elements, const Mat3& eps) {
  Permittivity p;
  p.cell_average.assign(n_elements, eps);
  p.validate();
  return p;
}

Permittivity Permittivity::from_function(const Mesh& mesh,
                                         const std::function<Mat3(const Vec3&)>& eps,
                                         int quad_order) {
  Permittivity p;
  p.cell_average.reserve(mesh.elements.size());
  for (const Element& el : mesh.elements) {
    const QuadratureRule rule = cell_rule(el, quad_order);
    Mat3 avg = Mat3::zero();
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
      Mat3 v = eps(rule.points[i]);
      v *= rule.weights[i];
      avg += v;
    }
    avg *= 1.0 / el.volume;
    p.cell_average.push_back(avg);
  }
  p.validate();
  return p;
}

void Permittivity::validate() const {
  for (std::size_t e = 0; e < cell_average.size(); ++e) {
    const Mat3& m = cell_average[e];
    if (m.max_asymmetry() > 1e-12)
      throw Error("permittivity: cell average " + std::to_string(e) +
                  " is not symmetric");
    if (m.min_eigenvalue() <= 0.0)
      throw Error("permittivity: cell average " + std::to_string(e) +
                  " is not positive definite");
  }
}

QuadratureSelector uniform_quadrature(int order) {
  return [order](const Element&) { return LoadQuadrature{order, order}; };
}

ProblemData ProblemData::zero() {
  ProblemData d;
  d.f = [](const Vec3&) { return 0.0; };
  d.g = [](const Vec3&) { return Vec3{0, 0, 0}; };
  d.chi = [](const Vec3&, const Vec3&) { return Vec3{0, 0, 0}; };
  return d;
}

Eigen::MatrixXd element_matrix(const Element& element, const Mesh& mesh,
                               const std::vector<TangentialBasis>& bases,
                               const Permittivity& eps,
                               const StabilizationWeights& rho) {
  rho.validate();
  if (element.volume <= 0.0)
    throw Error("element_matrix: degenerate element " + std::to_string(element.id));

  const LocalLayout L;
  const int n = L.size();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  const double inv_h = 1.0 / element.diameter;
  const Mat3& eps_T = eps.at(element.id);
  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};

  for (int i = 0; i < 6; ++i) {
    const Face& face = mesh.faces[element.face_ids[i]];
    if (face.area <= 0.0)
      throw Error("element_matrix: degenerate face " + std::to_string(face.id));
    const double area = face.area;
    const Vec3& ni = element.outward_normals[i];
    const TangentialBasis& tb = bases[face.id];

    // A, B, C: jumps of the lambda components.
    M(L.lambda0(), L.lambda0()) += rho.rho1 * inv_h * area;
    M(L.lambda0(), L.lambda_b(i)) -= rho.rho1 * inv_h * area;
    M(L.lambda_b(i), L.lambda0()) -= rho.rho1 * inv_h * area;
    M(L.lambda_b(i), L.lambda_b(i)) += rho.rho1 * inv_h * area;

    // J, K, L: jumps of the s components, entering with the opposite sign.
    M(L.s0(), L.s0()) -= rho.rho3 * inv_h * area;
    M(L.s0(), L.s_b(i)) += rho.rho3 * inv_h * area;
    M(L.s_b(i), L.s0()) += rho.rho3 * inv_h * area;
    M(L.s_b(i), L.s_b(i)) -= rho.rho3 * inv_h * area;

    const Vec3 eps_n = eps_T.apply(ni);
    for (int j = 0; j < 3; ++j) {
      // D: (u, eps grad_w of the lambda_b basis).
      const double d_ij = axes[j].dot(eps_n) * area;
      M(L.lambda_b(i), L.u(j)) += d_ij;
      M(L.u(j), L.lambda_b(i)) += d_ij;

      // G: (q_0, grad_w of the s_b basis).
      const double g_ji = axes[j].dot(ni) * area;
      M(L.q0(j), L.s_b(i)) += g_ji;
      M(L.s_b(i), L.q0(j)) += g_ji;
    }

    // E: tangential jumps of q_0 against q_0.
    std::array<Vec3, 3> e_cross_n;
    for (int j = 0; j < 3; ++j) e_cross_n[j] = cross(axes[j], ni);
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j)
        M(L.q0(k), L.q0(j)) += rho.rho2 * inv_h * e_cross_n[k].dot(e_cross_n[j]) * area;

    for (int k = 0; k < 2; ++k) {
      const Vec3 ebn_k = tb.e_bn(k, ni);
      for (int j = 0; j < 3; ++j) {
        // F: tangential jumps of q_0 against q_b.
        const double f_ikj = -rho.rho2 * inv_h * ebn_k.dot(e_cross_n[j]) * area;
        M(L.q_b(i, k), L.q0(j)) += f_ikj;
        M(L.q0(j), L.q_b(i, k)) += f_ikj;

        // I: (u, curl_w of the q_b basis) = -(u . e_bn) |sigma|.
        const double i_ikj = -axes[j].dot(ebn_k) * area;
        M(L.q_b(i, k), L.u(j)) += i_ikj;
        M(L.u(j), L.q_b(i, k)) += i_ikj;
      }
      // H: tangential jumps of q_b against q_b (diagonal over faces).
      for (int j = 0; j < 2; ++j) {
        const Vec3 ebn_j = tb.e_bn(j, ni);
        M(L.q_b(i, k), L.q_b(i, j)) += rho.rho2 * inv_h * ebn_k.dot(ebn_j) * area;
      }
    }
  }
  return M;
}

Eigen::VectorXd element_load(const Element& element, const Mesh& mesh,
                             const std::vector<TangentialBasis>& bases,
                             const ProblemData& data, const LoadQuadrature& quad) {
  const LocalLayout L;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L.size());

  const QuadratureRule cell = cell_rule(element, quad.cell_order);
  double f_int = 0.0;
  Vec3 g_int{0, 0, 0};
  for (std::size_t p = 0; p < cell.points.size(); ++p) {
    const double w = cell.weights[p];
    f_int += w * data.f(cell.points[p]);
    g_int += w * data.g(cell.points[p]);
  }
  if (!std::isfinite(f_int) || !g_int.finite())
    throw Error("element_load: data produced NaN on element " +
                std::to_string(element.id));
  rhs(L.lambda0()) = -f_int;
  for (int j = 0; j < 3; ++j) rhs(L.q0(j)) = g_int[j];

  // <chi, e^k_b> on boundary faces only; alpha terms are applied globally.
  for (int i = 0; i < 6; ++i) {
    const Face& face = mesh.faces[element.face_ids[i]];
    if (!face.is_boundary()) continue;
    const Vec3& n = element.outward_normals[i];
    const TangentialBasis& tb = bases[face.id];
    const QuadratureRule rule = face_rule(face, mesh, quad.face_order);
    Vec3 chi_int{0, 0, 0};
    for (std::size_t p = 0; p < rule.points.size(); ++p)
      chi_int += rule.weights[p] * data.chi(rule.points[p], n);
    if (!chi_int.finite())
      throw Error("element_load: boundary data produced NaN on face " +
                  std::to_string(face.id));
    for (int k = 0; k < 2; ++k) rhs(L.q_b(i, k)) = chi_int.dot(tb.e(k));
  }
  return rhs;
}

ElementSystem element_system(const Element& element, const Mesh& mesh,
                             const std::vector<TangentialBasis>& bases,
                             const Permittivity& eps, const StabilizationWeights& rho,
                             const ProblemData& data, const LoadQuadrature& quad) {
  ElementSystem sys;
  sys.matrix = element_matrix(element, mesh, bases, eps, rho);
  sys.load = element_load(element, mesh, bases, data, quad);
  return sys;
}

}  // namespace pdwg

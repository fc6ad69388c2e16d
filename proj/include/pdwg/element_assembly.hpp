#ifndef PDWG_ELEMENT_ASSEMBLY_HPP
#define PDWG_ELEMENT_ASSEMBLY_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "pdwg/quadrature.hpp"
#include "pdwg/weak_calculus.hpp"

namespace pdwg {

/// Cell-averaged permittivity tensors, one symmetric positive definite 3x3
/// matrix per element.
struct Permittivity {
  std::vector<Mat3> cell_average;

  static Permittivity identity(std::size_t n_elements);
  static Permittivity constant(std::size_t n_elements, const Mat3& eps);
  /// Cell averages of a spatially varying tensor by cell quadrature.
  static Permittivity from_function(const Mesh& mesh,
                                    const std::function<Mat3(const Vec3&)>& eps,
                                    int quad_order = 4);

  const Mat3& at(int element_id) const { return cell_average[element_id]; }
  void validate() const;  // symmetry within 1e-12, smallest eigenvalue > 0
};

/// Stabilizer weights rho_1, rho_2 (lambda/q jumps) and rho_3 (s jumps).
struct StabilizationWeights {
  double rho1 = 1.0;
  double rho2 = 1.0;
  double rho3 = 1.0;

  void validate() const {
    if (rho1 <= 0 || rho2 <= 0 || rho3 <= 0)
      throw Error("stabilization weights must be strictly positive");
  }
};

/// Local degree-of-freedom layout of one element with N faces:
/// [lambda_0 | lambda_b (N) | q_0 (3) | q_b (2N, tangent-major) | s_0 |
///  s_b (N) | u (3)], which gives 2 + 2N + 6 + 2N entries (32 for N = 6).
struct LocalLayout {
  int n_faces = 6;

  int lambda0() const { return 0; }
  int lambda_b(int i) const { return 1 + i; }
  int q0(int k) const { return 1 + n_faces + k; }
  int q_b(int i, int k) const { return 1 + n_faces + 3 + k * n_faces + i; }
  int s0() const { return 1 + 3 * n_faces + 3; }
  int s_b(int i) const { return s0() + 1 + i; }
  int u(int k) const { return s0() + 1 + n_faces + k; }
  int size() const { return 2 + 2 * n_faces + 6 + 2 * n_faces; }
};

/// Dense element stiffness matrix and load vector in LocalLayout order.
struct ElementSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd load;
  LocalLayout layout;
};

/// Problem data evaluated during load assembly. `chi` receives the point and
/// the outward unit normal of the boundary face. Hole fluxes alpha_i are
/// applied once per boundary component at the global level, never here.
struct ProblemData {
  std::function<double(const Vec3&)> f;
  std::function<Vec3(const Vec3&)> g;
  std::function<Vec3(const Vec3&, const Vec3&)> chi;
  std::vector<double> hole_fluxes;  // alpha_i for components 1..L

  static ProblemData zero();
};

/// Quadrature orders for the data integrals of one element.
struct LoadQuadrature {
  int cell_order = 4;
  int face_order = 4;
};

/// Per-element quadrature order selection for the data integrals.
using QuadratureSelector = std::function<LoadQuadrature(const Element&)>;

QuadratureSelector uniform_quadrature(int order);

/// Closed-form element stiffness matrix of the lowest-order scheme. Blocks:
///   A, B, C   lambda jumps (rho1),  E, F, H  tangential q jumps (rho2),
///   J, K, L   s jumps (-rho3),      D, G, I  the unscaled coupling blocks.
Eigen::MatrixXd element_matrix(const Element& element, const Mesh& mesh,
                               const std::vector<TangentialBasis>& bases,
                               const Permittivity& eps,
                               const StabilizationWeights& rho);

/// Element load vector: -(f,1) on lambda_0, (g, e^j) on q_0, and the
/// tangential boundary data <chi, e^j_b> on q_b slots of boundary faces.
Eigen::VectorXd element_load(const Element& element, const Mesh& mesh,
                             const std::vector<TangentialBasis>& bases,
                             const ProblemData& data, const LoadQuadrature& quad);

ElementSystem element_system(const Element& element, const Mesh& mesh,
                             const std::vector<TangentialBasis>& bases,
                             const Permittivity& eps, const StabilizationWeights& rho,
                             const ProblemData& data, const LoadQuadrature& quad);

}  // namespace pdwg

#endif

#ifndef PDWG_DOF_SYSTEM_HPP
#define PDWG_DOF_SYSTEM_HPP

#include <array>
#include <vector>

#include "pdwg/element_assembly.hpp"
#include "pdwg/sparse.hpp"

namespace pdwg {

/// Global numbering of the coupled unknowns. Per element: u (3), q_0 (3),
/// lambda_0, s_0. Per face: s_b, q_b (2). lambda_b is eliminated on the
/// exterior boundary, merged into one shared index per hole component, and
/// one extra index carries the Lagrange multiplier of the zero-mean
/// constraint on s_0.
struct DofMap {
  std::vector<int> lambda0, s0;                // per element
  std::vector<std::array<int, 3>> q0, u;       // per element
  std::vector<int> s_b;                        // per face
  std::vector<std::array<int, 2>> q_b;         // per face
  std::vector<int> lambda_b;                   // per face, -1 when eliminated
  std::vector<int> hole_lambda_b;              // shared index per hole (1..L)
  int mean_multiplier = -1;
  int total_dofs = 0;
};

DofMap build_dof_map(const Mesh& mesh);

/// Upper bound on the number of unknowns: 2 N_T + 2 N_sigma + 2 N_T d +
/// N_sigma (d-1), plus the single mean multiplier.
long dof_bound(const Mesh& mesh);

struct GlobalSystem {
  SparseMatrix matrix;
  std::vector<double> rhs;
  double symmetry_certificate = 0.0;  // max |A - A^T| over the pattern
};

SparseMatrix assemble_matrix(const Mesh& mesh, const DofMap& dofs,
                             const Permittivity& eps, const StabilizationWeights& rho);

std::vector<double> assemble_rhs(const Mesh& mesh, const DofMap& dofs,
                                 const ProblemData& data,
                                 const QuadratureSelector& quad);

GlobalSystem assemble(const Mesh& mesh, const DofMap& dofs, const Permittivity& eps,
                      const StabilizationWeights& rho, const ProblemData& data,
                      const QuadratureSelector& quad);

/// Per-element constant part of the solution vector field u_h.
std::vector<Vec3> extract_u(const DofMap& dofs, const std::vector<double>& solution);

/// Data compatibility diagnostics: sampled divergence of g, tangency of chi,
/// and the pairing of the boundary flux of g with surface gradients of
/// mesh-based probe functions. Warnings only; solving proceeds regardless.
struct CompatibilityReport {
  double max_div_g = 0.0;        // max |finite-difference div g| at cell points
  double max_chi_normal = 0.0;   // max |chi - n x (chi x n)| on boundary faces
  double max_flux_pairing = 0.0; // max |<g.n, rho> + <chi x n, grad rho x n>|
  std::vector<std::string> warnings;
};

CompatibilityReport check_compatibility(const ProblemData& data, const Mesh& mesh,
                                        int quad_order = 4);

}  // namespace pdwg

#endif

#ifndef PDWG_MANUFACTURED_HPP
#define PDWG_MANUFACTURED_HPP

#include <string>
#include <vector>

#include "pdwg/element_assembly.hpp"

namespace pdwg {

enum class Solution { Constant, U1, U2, U3, U4, U5, U6 };

Solution parse_solution(const std::string& name);
std::string to_string(Solution s);

/// Exact vector field with its derived data f = div(u) and g = curl(u)
/// (identity permittivity). chi on the boundary is always u x n. The fields
/// of u3 and u4 involve cylindrical terms singular on the axis x = y = 0;
/// evaluation exactly on the axis is rejected.
struct ManufacturedSolution {
  Solution id = Solution::Constant;
  std::string name;
  bool singular_axis = false;

  Vec3 (*u)(const Vec3&) = nullptr;
  double (*f)(const Vec3&) = nullptr;
  Vec3 (*g)(const Vec3&) = nullptr;

  Vec3 chi(const Vec3& x, const Vec3& n) const { return cross(u(x), n); }
};

const ManufacturedSolution& manufactured_solution(Solution id);

/// Element-wise L2 projection onto constants: (Q_0 u)_T = |T|^{-1} int_T u.
std::vector<Vec3> project(const Mesh& mesh, const ManufacturedSolution& sol,
                          const QuadratureSelector& quad);

/// Fluxes alpha_i = <eps u . n_i, 1> over each hole component (n outward
/// with respect to the domain, pointing into the hole).
std::vector<double> hole_fluxes(const Mesh& mesh, const ManufacturedSolution& sol,
                                const Permittivity& eps, int face_quad_order = 4);

/// Bundles f, g, chi and the hole fluxes of one manufactured solution.
ProblemData make_problem_data(const Mesh& mesh, const ManufacturedSolution& sol,
                              const Permittivity& eps, int face_quad_order = 4);

/// Default data-integration rule: `order` points per axis, raised to 6 on
/// elements whose closure touches the singular axis of u3/u4.
QuadratureSelector solution_quadrature(const ManufacturedSolution& sol, int order);

}  // namespace pdwg

#endif

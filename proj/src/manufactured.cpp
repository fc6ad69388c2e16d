#include "pdwg/manufactured.hpp"

#include <cmath>
#include <numbers>

namespace pdwg {

namespace {

constexpr double kPi = std::numbers::pi;

void require_off_axis(const Vec3& p) {
  if (p.x == 0.0 && p.y == 0.0)
    throw Error("manufactured solution is singular on the axis x = y = 0");
}

// ---- u1: polynomial field with homogeneous tangential trace on the cube.
Vec3 u1(const Vec3& p) {
  return {p.y * (1 - p.y) * p.z * (1 - p.z), p.x * (1 - p.x) * p.z * (1 - p.z),
          p.x * (1 - p.x) * p.y * (1 - p.y)};
}
double f1(const Vec3&) { return 0.0; }
Vec3 g1(const Vec3& p) {
  return {2 * p.x * (1 - p.x) * (p.z - p.y), 2 * p.y * (1 - p.y) * (p.x - p.z),
          2 * p.z * (1 - p.z) * (p.y - p.x)};
}

// ---- u2: mixed trigonometric/polynomial field on the unit cube.
Vec3 u2(const Vec3& p) {
  return {std::sin(kPi * p.x) * std::sin(kPi * p.y) * std::sin(kPi * p.z),
          p.x * p.y * p.z, (p.x + 1) * (p.y + 1) * (p.z + 1)};
}
double f2(const Vec3& p) {
  return kPi * std::cos(kPi * p.x) * std::sin(kPi * p.y) * std::sin(kPi * p.z) +
         p.x * p.z + (p.x + 1) * (p.y + 1);
}
Vec3 g2(const Vec3& p) {
  return {(p.x + 1) * (p.z + 1) - p.x * p.y,
          kPi * std::sin(kPi * p.x) * std::sin(kPi * p.y) * std::cos(kPi * p.z) -
              (p.y + 1) * (p.z + 1),
          p.y * p.z - kPi * std::sin(kPi * p.x) * std::cos(kPi * p.y) * std::sin(kPi * p.z)};
}

// ---- u3: u1 with the third component replaced by the H^{1+2/3-eps} term
// r^{2/3} sin(2 theta) (1-x)(1-y).
double w3(double r, double theta) { return std::cbrt(r * r) * std::sin(2 * theta); }

Vec3 u3(const Vec3& p) {
  require_off_axis(p);
  const double r = std::hypot(p.x, p.y), theta = std::atan2(p.y, p.x);
  return {p.y * (1 - p.y) * p.z * (1 - p.z), p.x * (1 - p.x) * p.z * (1 - p.z),
          w3(r, theta) * (1 - p.x) * (1 - p.y)};
}
double f3(const Vec3&) { return 0.0; }
Vec3 g3(const Vec3& p) {
  require_off_axis(p);
  const double r = std::hypot(p.x, p.y), theta = std::atan2(p.y, p.x);
  const double w = w3(r, theta);
  const double rm13 = 1.0 / std::cbrt(r);
  const double ct = std::cos(theta), st = std::sin(theta);
  const double s2 = std::sin(2 * theta), c2 = std::cos(2 * theta);
  const double wx = rm13 * ((2.0 / 3.0) * ct * s2 - 2.0 * st * c2);
  const double wy = rm13 * ((2.0 / 3.0) * st * s2 + 2.0 * ct * c2);
  const double dz_dy = wy * (1 - p.x) * (1 - p.y) - w * (1 - p.x);
  const double dz_dx = wx * (1 - p.x) * (1 - p.y) - w * (1 - p.y);
  return {dz_dy - p.x * (1 - p.x) * (1 - 2 * p.z),
          p.y * (1 - p.y) * (1 - 2 * p.z) - dz_dx,
          2 * p.z * (1 - p.z) * (p.y - p.x)};
}

// ---- u4: gradient of the harmonic function r^{2/3} sin(2 theta / 3), in
// H^{2/3-eps} only. Being a gradient of a harmonic function, f = 0 and g = 0
// hold identically; they are returned without any numerical differentiation.
Vec3 u4(const Vec3& p) {
  require_off_axis(p);
  const double r = std::hypot(p.x, p.y), theta = std::atan2(p.y, p.x);
  const double s = (2.0 / 3.0) / std::cbrt(r);
  return {-s * std::sin(theta / 3.0), s * std::cos(theta / 3.0), 0.0};
}
double f4(const Vec3&) { return 0.0; }
Vec3 g4(const Vec3&) { return {0, 0, 0}; }

// ---- u5: linear field used on the multi-connected domains.
Vec3 u5(const Vec3& p) { return {p.x + p.y + p.z, p.x - p.z, p.x + 3 * p.y}; }
double f5(const Vec3&) { return 1.0; }
Vec3 g5(const Vec3&) { return {4, 0, 0}; }

// ---- u6: trigonometric/polynomial field on the multi-connected domains.
Vec3 u6(const Vec3& p) {
  return {std::sin(p.x) * std::sin(p.y) * std::sin(p.z), p.x * p.y * p.z,
          (p.x + 1) * (p.y + 1) * (p.z + 1)};
}
double f6(const Vec3& p) {
  return std::cos(p.x) * std::sin(p.y) * std::sin(p.z) + p.x * p.z +
         (p.x + 1) * (p.y + 1);
}
Vec3 g6(const Vec3& p) {
  return {(p.x + 1) * (p.z + 1) - p.x * p.y,
          std::sin(p.x) * std::sin(p.y) * std::cos(p.z) - (p.y + 1) * (p.z + 1),
          p.y * p.z - std::sin(p.x) * std::cos(p.y) * std::sin(p.z)};
}

Vec3 uc(const Vec3&) { return {1, 2, 3}; }
double fc(const Vec3&) { return 0.0; }
Vec3 gc(const Vec3&) { return {0, 0, 0}; }

const ManufacturedSolution kSolutions[] = {
    {Solution::Constant, "const", false, uc, fc, gc},
    {Solution::U1, "u1", false, u1, f1, g1},
    {Solution::U2, "u2", false, u2, f2, g2},
    {Solution::U3, "u3", true, u3, f3, g3},
    {Solution::U4, "u4", true, u4, f4, g4},
    {Solution::U5, "u5", false, u5, f5, g5},
    {Solution::U6, "u6", false, u6, f6, g6},
};

}  // namespace

Solution parse_solution(const std::string& name) {
  for (const ManufacturedSolution& s : kSolutions)
    if (s.name == name) return s.id;
  throw Error("unknown solution \"" + name + "\" (const, u1..u6)");
}

std::string to_string(Solution s) { return manufactured_solution(s).name; }

const ManufacturedSolution& manufactured_solution(Solution id) {
  for (const ManufacturedSolution& s : kSolutions)
    if (s.id == id) return s;
  throw Error("unknown solution id");
}

std::vector<Vec3> project(const Mesh& mesh, const ManufacturedSolution& sol,
                          const QuadratureSelector& quad) {
  std::vector<Vec3> values;
  values.reserve(mesh.elements.size());
  for (const Element& el : mesh.elements) {
    const QuadratureRule rule = cell_rule(el, quad(el).cell_order);
    Vec3 avg{0, 0, 0};
    for (std::size_t i = 0; i < rule.points.size(); ++i)
      avg += rule.weights[i] * sol.u(rule.points[i]);
    values.push_back(avg / el.volume);
  }
  return values;
}

std::vector<double> hole_fluxes(const Mesh& mesh, const ManufacturedSolution& sol,
                                const Permittivity& eps, int face_quad_order) {
  std::vector<double> alpha;
  const int n_components = static_cast<int>(mesh.boundary_components.size());
  for (int c = 1; c < n_components; ++c) {
    double flux = 0.0;
    for (int f : mesh.boundary_components[c]) {
      const Face& face = mesh.faces[f];
      const Element& el = mesh.elements[face.adjacent_elements[0]];
      Vec3 n;
      for (int lf = 0; lf < 6; ++lf)
        if (el.face_ids[lf] == face.id) n = el.outward_normals[lf];
      const Vec3 eps_n = eps.at(el.id).apply(n);
      const QuadratureRule rule = face_rule(face, mesh, face_quad_order);
      for (std::size_t p = 0; p < rule.points.size(); ++p)
        flux += rule.weights[p] * dot(sol.u(rule.points[p]), eps_n);
    }
    alpha.push_back(flux);
  }
  return alpha;
}

ProblemData make_problem_data(const Mesh& mesh, const ManufacturedSolution& sol,
                              const Permittivity& eps, int face_quad_order) {
  ProblemData data;
  data.f = sol.f;
  data.g = sol.g;
  data.chi = [u = sol.u](const Vec3& p, const Vec3& n) { return cross(u(p), n); };
  data.hole_fluxes = hole_fluxes(mesh, sol, eps, face_quad_order);
  return data;
}

QuadratureSelector solution_quadrature(const ManufacturedSolution& sol, int order) {
  const bool singular = sol.singular_axis;
  return [singular, order](const Element& el) {
    LoadQuadrature q{order, order};
    if (singular && el.lo.x <= 0.0 && el.hi.x >= 0.0 && el.lo.y <= 0.0 &&
        el.hi.y >= 0.0) {
      q.cell_order = std::max(order, 6);
      q.face_order = std::max(order, 6);
    }
    return q;
  };
}

}  // namespace pdwg

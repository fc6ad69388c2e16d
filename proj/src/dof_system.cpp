#include "pdwg/dof_system.hpp"

#include <cmath>

namespace pdwg {

DofMap build_dof_map(const Mesh& mesh) {
  DofMap dofs;
  const int n_el = static_cast<int>(mesh.elements.size());
  const int n_face = static_cast<int>(mesh.faces.size());
  dofs.lambda0.resize(n_el);
  dofs.s0.resize(n_el);
  dofs.q0.resize(n_el);
  dofs.u.resize(n_el);
  dofs.s_b.resize(n_face);
  dofs.q_b.resize(n_face);
  dofs.lambda_b.assign(n_face, -1);

  int next = 0;
  for (int e = 0; e < n_el; ++e) {
    dofs.lambda0[e] = next++;
    dofs.s0[e] = next++;
    for (int k = 0; k < 3; ++k) dofs.q0[e][k] = next++;
    for (int k = 0; k < 3; ++k) dofs.u[e][k] = next++;
  }
  for (int f = 0; f < n_face; ++f) {
    dofs.s_b[f] = next++;
    for (int k = 0; k < 2; ++k) dofs.q_b[f][k] = next++;
  }
  // lambda_b: interior faces get their own index; faces of the exterior
  // component are eliminated (lambda_b = 0 there); every face of one hole
  // component shares a single index.
  for (int f = 0; f < n_face; ++f)
    if (!mesh.faces[f].is_boundary()) dofs.lambda_b[f] = next++;
  const int n_components = static_cast<int>(mesh.boundary_components.size());
  for (int c = 1; c < n_components; ++c) {
    const int shared = next++;
    dofs.hole_lambda_b.push_back(shared);
    for (int f : mesh.boundary_components[c]) dofs.lambda_b[f] = shared;
  }
  dofs.mean_multiplier = next++;
  dofs.total_dofs = next;

  if (dofs.total_dofs > dof_bound(mesh))
    throw Error("build_dof_map: unknown count exceeds the structural bound");
  return dofs;
}

long dof_bound(const Mesh& mesh) {
  const long nt = static_cast<long>(mesh.elements.size());
  const long ns = static_cast<long>(mesh.faces.size());
  return 2 * nt + 2 * ns + 2 * nt * 3 + ns * 2 + 1;
}

namespace {

// Global column index of each local slot, or -1 for eliminated lambda_b.
std::vector<int> scatter_map(const DofMap& dofs, const Element& el) {
  const LocalLayout L;
  std::vector<int> map(L.size(), -1);
  map[L.lambda0()] = dofs.lambda0[el.id];
  map[L.s0()] = dofs.s0[el.id];
  for (int k = 0; k < 3; ++k) {
    map[L.q0(k)] = dofs.q0[el.id][k];
    map[L.u(k)] = dofs.u[el.id][k];
  }
  for (int i = 0; i < 6; ++i) {
    const int f = el.face_ids[i];
    map[L.s_b(i)] = dofs.s_b[f];
    for (int k = 0; k < 2; ++k) map[L.q_b(i, k)] = dofs.q_b[f][k];
    map[L.lambda_b(i)] = dofs.lambda_b[f];  // -1 on the exterior boundary
  }
  return map;
}

}  // namespace

SparseMatrix assemble_matrix(const Mesh& mesh, const DofMap& dofs,
                             const Permittivity& eps, const StabilizationWeights& rho) {
  if (eps.cell_average.size() != mesh.elements.size())
    throw Error("assemble_matrix: permittivity does not match the mesh");
  const std::vector<TangentialBasis> bases = face_bases(mesh);

  std::vector<Triplet> triplets;
  triplets.reserve(mesh.elements.size() * 32 * 20);
  for (const Element& el : mesh.elements) {
    const Eigen::MatrixXd M = element_matrix(el, mesh, bases, eps, rho);
    const std::vector<int> map = scatter_map(dofs, el);
    for (int a = 0; a < M.rows(); ++a) {
      if (map[a] < 0) continue;
      for (int b = 0; b < M.cols(); ++b) {
        if (map[b] < 0 || M(a, b) == 0.0) continue;
        triplets.push_back({map[a], map[b], M(a, b)});
      }
    }
  }

  // Zero-mean constraint on s_0 through one symmetric multiplier row,
  // volume-weighted and normalized by |Omega|.
  double volume = 0.0;
  for (const Element& el : mesh.elements) volume += el.volume;
  for (const Element& el : mesh.elements) {
    const double w = el.volume / volume;
    triplets.push_back({dofs.mean_multiplier, dofs.s0[el.id], w});
    triplets.push_back({dofs.s0[el.id], dofs.mean_multiplier, w});
  }

  return SparseMatrix::from_triplets(dofs.total_dofs, std::move(triplets));
}

std::vector<double> assemble_rhs(const Mesh& mesh, const DofMap& dofs,
                                 const ProblemData& data,
                                 const QuadratureSelector& quad) {
  const std::vector<TangentialBasis> bases = face_bases(mesh);
  std::vector<double> rhs(dofs.total_dofs, 0.0);
  for (const Element& el : mesh.elements) {
    const Eigen::VectorXd load = element_load(el, mesh, bases, data, quad(el));
    const std::vector<int> map = scatter_map(dofs, el);
    for (int a = 0; a < load.size(); ++a) {
      if (map[a] < 0 || load(a) == 0.0) continue;
      rhs[map[a]] += load(a);
    }
  }
  // One alpha contribution per hole component, on its shared lambda_b index.
  const int holes = static_cast<int>(dofs.hole_lambda_b.size());
  if (!data.hole_fluxes.empty() &&
      static_cast<int>(data.hole_fluxes.size()) != holes)
    throw Error("assemble_rhs: hole flux count does not match the mesh topology");
  for (int i = 0; i < holes && i < static_cast<int>(data.hole_fluxes.size()); ++i)
    rhs[dofs.hole_lambda_b[i]] += data.hole_fluxes[i];
  return rhs;
}

GlobalSystem assemble(const Mesh& mesh, const DofMap& dofs, const Permittivity& eps,
                      const StabilizationWeights& rho, const ProblemData& data,
                      const QuadratureSelector& quad) {
  GlobalSystem sys;
  sys.matrix = assemble_matrix(mesh, dofs, eps, rho);
  sys.rhs = assemble_rhs(mesh, dofs, data, quad);
  sys.symmetry_certificate = sys.matrix.symmetry_gap();
  const double scale = sys.matrix.max_abs();
  if (sys.symmetry_certificate > 1e-12 * std::max(scale, 1.0))
    throw Error("assemble: global matrix lost symmetry");
  return sys;
}

std::vector<Vec3> extract_u(const DofMap& dofs, const std::vector<double>& solution) {
  std::vector<Vec3> u(dofs.u.size());
  for (std::size_t e = 0; e < dofs.u.size(); ++e)
    u[e] = {solution[dofs.u[e][0]], solution[dofs.u[e][1]], solution[dofs.u[e][2]]};
  return u;
}

CompatibilityReport check_compatibility(const ProblemData& data, const Mesh& mesh,
                                        int quad_order) {
  CompatibilityReport report;
  const double fd_step = 1e-5;

  // div g by central differences at interior quadrature points.
  for (const Element& el : mesh.elements) {
    const QuadratureRule rule = cell_rule(el, quad_order);
    for (const Vec3& p : rule.points) {
      double div = 0.0;
      for (int a = 0; a < 3; ++a) {
        Vec3 hi = p, lo = p;
        hi[a] += fd_step;
        lo[a] -= fd_step;
        div += (data.g(hi)[a] - data.g(lo)[a]) / (2.0 * fd_step);
      }
      report.max_div_g = std::max(report.max_div_g, std::abs(div));
    }
  }

  // chi must be tangential: chi - n x (chi x n) = (chi . n) n.
  for (const Face& face : mesh.faces) {
    if (!face.is_boundary()) continue;
    const Element& el = mesh.elements[face.adjacent_elements[0]];
    Vec3 n;
    for (int lf = 0; lf < 6; ++lf)
      if (el.face_ids[lf] == face.id) n = el.outward_normals[lf];
    const QuadratureRule rule = face_rule(face, mesh, quad_order);
    for (const Vec3& p : rule.points) {
      const Vec3 chi = data.chi(p, n);
      const Vec3 residual = chi - cross(n, cross(chi, n));
      report.max_chi_normal = std::max(report.max_chi_normal, residual.norm());
    }
  }

  // <g.n, rho> + <chi x n, grad rho x n> over the whole boundary, probed with
  // the trilinear hat of each vertex of a sampled set of boundary faces and
  // with the three coordinate functions.
  struct Probe {
    std::function<double(const Vec3&)> value;
    std::function<Vec3(const Vec3&)> gradient;
  };
  std::vector<Probe> probes;
  for (int a = 0; a < 3; ++a)
    probes.push_back({[a](const Vec3& p) { return p[a]; },
                      [a](const Vec3&) {
                        Vec3 g{0, 0, 0};
                        g[a] = 1.0;
                        return g;
                      }});
  std::vector<int> probe_vertices;
  {
    std::vector<int> bfaces;
    for (const Face& f : mesh.faces)
      if (f.is_boundary()) bfaces.push_back(f.id);
    const std::size_t stride = std::max<std::size_t>(1, bfaces.size() / 8);
    for (std::size_t i = 0; i < bfaces.size(); i += stride)
      probe_vertices.push_back(mesh.faces[bfaces[i]].vertex_ids[0]);
  }
  for (int v : probe_vertices) {
    const Vec3 center = mesh.vertices[v];
    const double h = mesh.meshsize / std::sqrt(3.0);
    probes.push_back(
        {[center, h](const Vec3& p) {
           double val = 1.0;
           for (int a = 0; a < 3; ++a)
             val *= std::max(0.0, 1.0 - std::abs(p[a] - center[a]) / h);
           return val;
         },
         [center, h](const Vec3& p) {
           double factor[3], dfactor[3];
           for (int a = 0; a < 3; ++a) {
             const double t = (p[a] - center[a]) / h;
             factor[a] = std::max(0.0, 1.0 - std::abs(t));
             dfactor[a] =
                 (std::abs(t) < 1.0 && t != 0.0) ? -std::copysign(1.0, t) / h : 0.0;
           }
           return Vec3{dfactor[0] * factor[1] * factor[2],
                       factor[0] * dfactor[1] * factor[2],
                       factor[0] * factor[1] * dfactor[2]};
         }});
  }

  for (const Probe& probe : probes) {
    double pairing = 0.0;
    for (const Face& face : mesh.faces) {
      if (!face.is_boundary()) continue;
      const Element& el = mesh.elements[face.adjacent_elements[0]];
      Vec3 n;
      for (int lf = 0; lf < 6; ++lf)
        if (el.face_ids[lf] == face.id) n = el.outward_normals[lf];
      const QuadratureRule rule = face_rule(face, mesh, quad_order);
      for (std::size_t p = 0; p < rule.points.size(); ++p) {
        const Vec3& x = rule.points[p];
        const double w = rule.weights[p];
        pairing += w * dot(data.g(x), n) * probe.value(x);
        pairing += w * dot(cross(data.chi(x, n), n), cross(probe.gradient(x), n));
      }
    }
    report.max_flux_pairing = std::max(report.max_flux_pairing, std::abs(pairing));
  }

  if (report.max_div_g > 1e-6)
    report.warnings.push_back("div g deviates from zero (max " +
                              std::to_string(report.max_div_g) + ")");
  if (report.max_chi_normal > 1e-10)
    report.warnings.push_back("chi has a normal component (max " +
                              std::to_string(report.max_chi_normal) + ")");
  if (report.max_flux_pairing > 1e-6)
    report.warnings.push_back("boundary flux pairing of g and chi is nonzero (max " +
                              std::to_string(report.max_flux_pairing) + ")");
  return report;
}

}  // namespace pdwg

#ifndef PDWG_MESH_HPP
#define PDWG_MESH_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pdwg/geometry.hpp"

namespace pdwg {

/// Quadrilateral mesh face. Boundary faces carry the index of the boundary
/// component they belong to (0 = exterior, i >= 1 = cavity/hole surfaces).
struct Face {
  int id = -1;
  std::array<int, 4> vertex_ids{};   // ordered quad loop
  double area = 0.0;                 // |sigma|
  Vec3 oriented_normal;              // fixed prescribed orientation (+x/+y/+z)
  std::array<int, 2> adjacent_elements{-1, -1};  // second is -1 on the boundary
  int boundary_component = -1;       // -1 for interior faces
  Vec3 centroid;

  bool is_boundary() const { return adjacent_elements[1] < 0; }
};

/// Axis-aligned hexahedral element. Local faces are ordered
/// [-x, +x, -y, +y, -z, +z]; outward_normals follow the same order.
struct Element {
  int id = -1;
  std::array<int, 8> vertex_ids{};   // tensor-product corner order
  std::array<int, 6> face_ids{};
  double volume = 0.0;               // |T|
  double diameter = 0.0;             // h_T = diam(T)
  std::array<Vec3, 6> outward_normals{};
  Vec3 centroid;
  Vec3 lo, hi;                       // bounding box == the cell itself
};

enum class DomainTag { UnitCube, DomainA, DomainB, DomainC, Imported };

std::string to_string(DomainTag tag);

struct Mesh {
  std::vector<Vec3> vertices;
  std::vector<Element> elements;
  std::vector<Face> faces;
  double meshsize = 0.0;  // h = max h_T
  std::vector<std::vector<int>> boundary_components;  // [0] = exterior
  DomainTag domain_tag = DomainTag::Imported;

  int n_boundary_faces() const;
  /// Number of holes L (boundary components beyond the exterior one).
  int n_holes() const { return static_cast<int>(boundary_components.size()) - 1; }
};

/// Uniform n x n x n partition of the unit cube (0,1)^3.
Mesh build_unit_cube_mesh(int n);

/// Structured mesh of one of the multiply-connected test domains.
/// `n` counts cells per unit length; it must align every hole wall with a
/// grid plane (any n >= 1 for A and B, even n for C).
Mesh build_domain_mesh(DomainTag tag, int n);

/// Connected components of the boundary-face graph (faces adjacent iff they
/// share an edge); the exterior component comes first.
std::vector<std::vector<int>> detect_boundary_components(const Mesh& mesh);

/// Reads the JSON mesh format {"vertices": [[x,y,z],...],
/// "elements": [[v0..v7],...]} and recomputes all derived geometry.
Mesh import_mesh(const std::string& path);
Mesh import_mesh_json(const std::string& json_text);

/// Writes the JSON mesh format accepted by import_mesh.
void export_mesh(const Mesh& mesh, const std::string& path);

/// Structural checks used by the builders and the importer: closed-surface
/// identity per element, face/element adjacency, positive measures.
void validate_mesh(const Mesh& mesh);

}  // namespace pdwg

#endif

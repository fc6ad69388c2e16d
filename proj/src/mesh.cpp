#include "pdwg/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <fstream>
#include <functional>
#include <numbers>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace pdwg {

std::ostream& operator<<(std::ostream& os, const Vec3& v) {
  return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

double Mat3::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

double Mat3::min_eigenvalue() const {
  // Symmetric 3x3 eigenvalues via the trigonometric solution of the
  // characteristic cubic (Smith's method).
  const Mat3& A = *this;
  const double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
  const double q = (A(0, 0) + A(1, 1) + A(2, 2)) / 3.0;
  if (p1 == 0.0) return std::min({A(0, 0), A(1, 1), A(2, 2)});
  const double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
                    (A(2, 2) - q) * (A(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3 B;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) B(i, j) = (A(i, j) - (i == j ? q : 0.0)) / p;
  const double detB =
      B(0, 0) * (B(1, 1) * B(2, 2) - B(1, 2) * B(2, 1)) -
      B(0, 1) * (B(1, 0) * B(2, 2) - B(1, 2) * B(2, 0)) +
      B(0, 2) * (B(1, 0) * B(2, 1) - B(1, 1) * B(2, 0));
  const double r = std::clamp(detB / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  // Smallest eigenvalue corresponds to phi + 2*pi/3.
  return q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
}

std::string to_string(DomainTag tag) {
  switch (tag) {
    case DomainTag::UnitCube: return "cube";
    case DomainTag::DomainA: return "a";
    case DomainTag::DomainB: return "b";
    case DomainTag::DomainC: return "c";
    case DomainTag::Imported: return "imported";
  }
  return "?";
}

int Mesh::n_boundary_faces() const {
  int n = 0;
  for (const Face& f : faces)
    if (f.is_boundary()) ++n;
  return n;
}

namespace {

constexpr std::array<Vec3, 6> kLocalOutward = {
    Vec3{-1, 0, 0}, Vec3{1, 0, 0}, Vec3{0, -1, 0},
    Vec3{0, 1, 0},  Vec3{0, 0, -1}, Vec3{0, 0, 1}};

// Quad area as the sum of its two triangles; exact for planar quads.
double quad_area(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return 0.5 * cross(b - a, c - a).norm() + 0.5 * cross(c - a, d - a).norm();
}

struct GridSpec {
  Vec3 origin;
  double h = 0.0;
  int nx = 0, ny = 0, nz = 0;
};

// Builds a structured hexahedral mesh over the grid, keeping only the cells
// selected by `keep`. Faces are deduplicated through lattice keys, so both
// adjacent cells see the same Face object in the same orientation.
Mesh build_structured(const GridSpec& grid, DomainTag tag,
                      const std::function<bool(int, int, int)>& keep) {
  Mesh mesh;
  mesh.domain_tag = tag;

  const int nx = grid.nx, ny = grid.ny, nz = grid.nz;
  const double h = grid.h;
  const auto vkey = [&](int i, int j, int k) -> std::int64_t {
    return (static_cast<std::int64_t>(k) * (ny + 1) + j) * (nx + 1) + i;
  };

  // Pass 1: vertex ids for kept cells, in lattice order.
  std::unordered_map<std::int64_t, int> vertex_of;
  std::vector<std::array<int, 3>> kept;
  for (int k = 0; k < nz; ++k)
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (keep(i, j, k)) kept.push_back({i, j, k});

  const auto add_vertex = [&](int i, int j, int k) -> int {
    auto [it, inserted] = vertex_of.try_emplace(vkey(i, j, k), -1);
    if (inserted) {
      it->second = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(grid.origin + Vec3{i * h, j * h, k * h});
    }
    return it->second;
  };

  // Face lattice keys: (axis, i, j, k) of the lattice plane the face sits on.
  const auto fkey = [&](int axis, int i, int j, int k) -> std::int64_t {
    return ((static_cast<std::int64_t>(axis) * (nz + 1) + k) * (ny + 1) + j) *
               (nx + 1) + i;
  };
  std::unordered_map<std::int64_t, int> face_of;

  for (const auto& [i, j, k] : kept) {
    Element el;
    el.id = static_cast<int>(mesh.elements.size());
    for (int c = 0; c < 8; ++c) {
      const int ci = i + (c & 1), cj = j + ((c >> 1) & 1), ck = k + ((c >> 2) & 1);
      el.vertex_ids[c] = add_vertex(ci, cj, ck);
    }
    el.lo = grid.origin + Vec3{i * h, j * h, k * h};
    el.hi = grid.origin + Vec3{(i + 1) * h, (j + 1) * h, (k + 1) * h};
    el.centroid = (el.lo + el.hi) * 0.5;
    el.volume = h * h * h;
    el.diameter = std::sqrt(3.0) * h;
    el.outward_normals = kLocalOutward;

    // Local faces in the order [-x, +x, -y, +y, -z, +z].
    const std::array<std::array<int, 4>, 6> face_lattice = {{
        {0, i, j, k}, {0, i + 1, j, k},
        {1, i, j, k}, {1, i, j + 1, k},
        {2, i, j, k}, {2, i, j, k + 1},
    }};
    for (int lf = 0; lf < 6; ++lf) {
      const auto [axis, fi, fj, fk] = face_lattice[lf];
      auto [it, inserted] = face_of.try_emplace(fkey(axis, fi, fj, fk), -1);
      if (inserted) {
        Face face;
        face.id = static_cast<int>(mesh.faces.size());
        // Vertex loop oriented counterclockwise about the +axis normal.
        if (axis == 0) {
          face.vertex_ids = {add_vertex(fi, fj, fk), add_vertex(fi, fj + 1, fk),
                             add_vertex(fi, fj + 1, fk + 1), add_vertex(fi, fj, fk + 1)};
          face.oriented_normal = {1, 0, 0};
        } else if (axis == 1) {
          face.vertex_ids = {add_vertex(fi, fj, fk), add_vertex(fi, fj, fk + 1),
                             add_vertex(fi + 1, fj, fk + 1), add_vertex(fi + 1, fj, fk)};
          face.oriented_normal = {0, 1, 0};
        } else {
          face.vertex_ids = {add_vertex(fi, fj, fk), add_vertex(fi + 1, fj, fk),
                             add_vertex(fi + 1, fj + 1, fk), add_vertex(fi, fj + 1, fk)};
          face.oriented_normal = {0, 0, 1};
        }
        face.area = h * h;
        Vec3 c{0, 0, 0};
        for (int v : face.vertex_ids) c += mesh.vertices[v];
        face.centroid = c / 4.0;
        it->second = face.id;
        mesh.faces.push_back(face);
      }
      Face& face = mesh.faces[it->second];
      if (face.adjacent_elements[0] < 0) face.adjacent_elements[0] = el.id;
      else face.adjacent_elements[1] = el.id;
      el.face_ids[lf] = face.id;
    }
    mesh.elements.push_back(el);
  }

  if (mesh.elements.empty()) throw Error("build_structured: empty mesh");
  mesh.meshsize = std::sqrt(3.0) * h;
  mesh.boundary_components = detect_boundary_components(mesh);
  for (int c = 0; c < static_cast<int>(mesh.boundary_components.size()); ++c)
    for (int f : mesh.boundary_components[c]) mesh.faces[f].boundary_component = c;
  validate_mesh(mesh);
  return mesh;
}

bool inside_box(const Vec3& p, const Vec3& lo, const Vec3& hi) {
  return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y &&
         p.z >= lo.z && p.z <= hi.z;
}

}  // namespace

Mesh build_unit_cube_mesh(int n) {
  if (n < 1) throw Error("build_unit_cube_mesh: n must be >= 1");
  GridSpec grid{{0, 0, 0}, 1.0 / n, n, n, n};
  return build_structured(grid, DomainTag::UnitCube,
                          [](int, int, int) { return true; });
}

Mesh build_domain_mesh(DomainTag tag, int n) {
  if (n < 1) throw Error("build_domain_mesh: n must be >= 1");
  const double h = 1.0 / n;

  if (tag == DomainTag::DomainA || tag == DomainTag::DomainB) {
    GridSpec grid{{-2, -2, -2}, h, 4 * n, 4 * n, 4 * n};
    const Vec3 hole_lo{-1, -1, tag == DomainTag::DomainA ? -2.0 : -1.0};
    const Vec3 hole_hi{1, 1, tag == DomainTag::DomainA ? 2.0 : 1.0};
    return build_structured(grid, tag, [&](int i, int j, int k) {
      const Vec3 c = grid.origin + Vec3{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
      return !inside_box(c, hole_lo, hole_hi);
    });
  }
  if (tag == DomainTag::DomainC) {
    if (n % 2 != 0)
      throw Error("build_domain_mesh: domain C needs even n so the hole walls "
                  "at +-1.5, 2.5, 5.5 land on grid planes");
    GridSpec grid{{-2, -2, 0}, h, 4 * n, 8 * n, n};
    const Vec3 c_lo{-1.5, -1.5, 0}, c_hi{1.5, 1.5, 1};
    const Vec3 d_lo{-1.5, 2.5, 0}, d_hi{1.5, 5.5, 1};
    return build_structured(grid, tag, [&](int i, int j, int k) {
      const Vec3 c = grid.origin + Vec3{(i + 0.5) * h, (j + 0.5) * h, (k + 0.5) * h};
      return !inside_box(c, c_lo, c_hi) && !inside_box(c, d_lo, d_hi);
    });
  }
  throw Error("build_domain_mesh: tag must be DomainA, DomainB or DomainC");
}

std::vector<std::vector<int>> detect_boundary_components(const Mesh& mesh) {
  std::vector<int> bfaces;
  for (const Face& f : mesh.faces)
    if (f.is_boundary()) bfaces.push_back(f.id);
  if (bfaces.empty()) return {};

  // Faces are adjacent iff they share an edge (an unordered vertex pair).
  std::unordered_map<std::int64_t, std::vector<int>> edge_faces;
  const auto ekey = [](int a, int b) -> std::int64_t {
    if (a > b) std::swap(a, b);
    return (static_cast<std::int64_t>(a) << 32) | static_cast<std::uint32_t>(b);
  };
  for (int f : bfaces) {
    const auto& vs = mesh.faces[f].vertex_ids;
    for (int e = 0; e < 4; ++e)
      edge_faces[ekey(vs[e], vs[(e + 1) % 4])].push_back(f);
  }

  std::unordered_map<int, int> comp;  // face id -> component index
  std::vector<std::vector<int>> components;
  for (int seed : bfaces) {
    if (comp.count(seed)) continue;
    const int c = static_cast<int>(components.size());
    components.emplace_back();
    std::deque<int> queue{seed};
    comp[seed] = c;
    while (!queue.empty()) {
      const int f = queue.front();
      queue.pop_front();
      components[c].push_back(f);
      const auto& vs = mesh.faces[f].vertex_ids;
      for (int e = 0; e < 4; ++e)
        for (int g : edge_faces[ekey(vs[e], vs[(e + 1) % 4])])
          if (!comp.count(g)) {
            comp[g] = c;
            queue.push_back(g);
          }
    }
    std::sort(components[c].begin(), components[c].end());
  }

  // The exterior component holds the face with the largest bounding-box corner.
  const auto max_corner = [&](int f) {
    Vec3 m{-1e300, -1e300, -1e300};
    for (int v : mesh.faces[f].vertex_ids) {
      const Vec3& p = mesh.vertices[v];
      m = {std::max(m.x, p.x), std::max(m.y, p.y), std::max(m.z, p.z)};
    }
    return std::array<double, 3>{m.x, m.y, m.z};
  };
  int exterior = 0;
  std::array<double, 3> best = max_corner(components[0][0]);
  for (int c = 0; c < static_cast<int>(components.size()); ++c)
    for (int f : components[c]) {
      const auto m = max_corner(f);
      if (m > best) {
        best = m;
        exterior = c;
      }
    }
  if (exterior != 0) std::swap(components[0], components[exterior]);
  return components;
}

void validate_mesh(const Mesh& mesh) {
  constexpr double tol = 1e-12;
  for (const Vec3& v : mesh.vertices)
    if (!v.finite()) throw Error("mesh: non-finite vertex coordinate");
  for (const Element& el : mesh.elements) {
    if (el.volume <= 0.0) throw Error("mesh: element " + std::to_string(el.id) +
                                      " has non-positive volume");
    Vec3 closure{0, 0, 0};
    double area_sum = 0.0;
    for (int lf = 0; lf < 6; ++lf) {
      const Face& f = mesh.faces[el.face_ids[lf]];
      closure += f.area * el.outward_normals[lf];
      area_sum += f.area;
      const double align = dot(el.outward_normals[lf], f.oriented_normal);
      if (std::abs(std::abs(align) - 1.0) > tol)
        throw Error("mesh: outward normal not aligned with face orientation");
    }
    if (closure.norm() > tol * area_sum)
      throw Error("mesh: element " + std::to_string(el.id) +
                  " violates the closed-surface identity");
  }
  for (const Face& f : mesh.faces) {
    if (f.area <= 0.0) throw Error("mesh: face " + std::to_string(f.id) +
                                   " has non-positive area");
    if (std::abs(f.oriented_normal.norm() - 1.0) > tol)
      throw Error("mesh: face normal not unit length");
    const bool boundary = f.is_boundary();
    if (boundary != (f.boundary_component >= 0))
      throw Error("mesh: face " + std::to_string(f.id) +
                  " boundary component flag inconsistent with adjacency");
    if (f.adjacent_elements[0] < 0)
      throw Error("mesh: face " + std::to_string(f.id) + " has no adjacent element");
  }
}

namespace {

Mesh mesh_from_arrays(std::vector<Vec3> vertices,
                      const std::vector<std::array<int, 8>>& cells) {
  Mesh mesh;
  mesh.domain_tag = DomainTag::Imported;
  mesh.vertices = std::move(vertices);
  const int nv = static_cast<int>(mesh.vertices.size());

  // Local faces of the tensor-product hexahedron, ordered [-x,+x,-y,+y,-z,+z],
  // each loop counterclockwise about the +axis direction.
  constexpr std::array<std::array<int, 4>, 6> kFaceCorners = {{
      {0, 2, 6, 4}, {1, 3, 7, 5},
      {0, 4, 5, 1}, {2, 6, 7, 3},
      {0, 1, 3, 2}, {4, 5, 7, 6},
  }};

  std::unordered_map<std::string, int> face_of;
  const auto face_key = [](std::array<int, 4> vs) {
    std::sort(vs.begin(), vs.end());
    return std::to_string(vs[0]) + "," + std::to_string(vs[1]) + "," +
           std::to_string(vs[2]) + "," + std::to_string(vs[3]);
  };

  for (std::size_t e = 0; e < cells.size(); ++e) {
    Element el;
    el.id = static_cast<int>(e);
    el.vertex_ids = cells[e];

    for (int lf = 0; lf < 6; ++lf)
      for (int c : kFaceCorners[lf])
        if (el.vertex_ids[c] < 0 || el.vertex_ids[c] >= nv)
          throw Error("import_mesh: element " + std::to_string(e) + " local face " +
                      std::to_string(lf) + " references missing vertex " +
                      std::to_string(el.vertex_ids[c]));

    // Tensor-product corners of an axis-aligned box: bit0 -> x, bit1 -> y,
    // bit2 -> z. Verify each face is planar in its axis coordinate.
    const Vec3 lo = mesh.vertices[el.vertex_ids[0]];
    const Vec3 hi = mesh.vertices[el.vertex_ids[7]];
    const double scale = std::max({std::abs(lo.x), std::abs(lo.y), std::abs(lo.z),
                                   std::abs(hi.x), std::abs(hi.y), std::abs(hi.z), 1.0});
    for (int lf = 0; lf < 6; ++lf) {
      const int axis = lf / 2;
      const double plane = (lf % 2 == 0) ? lo[axis] : hi[axis];
      for (int c : kFaceCorners[lf])
        if (std::abs(mesh.vertices[el.vertex_ids[c]][axis] - plane) > 1e-12 * scale)
          throw Error("import_mesh: element " + std::to_string(e) + " local face " +
                      std::to_string(lf) + " is non-planar or not axis-aligned");
    }
    el.volume = (hi.x - lo.x) * (hi.y - lo.y) * (hi.z - lo.z);
    if (el.volume <= 0.0)
      throw Error("import_mesh: element " + std::to_string(e) +
                  " is inverted (non-positive volume)");
    el.lo = lo;
    el.hi = hi;
    el.centroid = (lo + hi) * 0.5;
    el.diameter = (hi - lo).norm();
    el.outward_normals = kLocalOutward;

    for (int lf = 0; lf < 6; ++lf) {
      std::array<int, 4> loop;
      for (int c = 0; c < 4; ++c) loop[c] = el.vertex_ids[kFaceCorners[lf][c]];
      auto [it, inserted] = face_of.try_emplace(face_key(loop), -1);
      if (inserted) {
        Face face;
        face.id = static_cast<int>(mesh.faces.size());
        // Store the loop counterclockwise about the +axis orientation.
        if (lf % 2 == 0) std::reverse(loop.begin(), loop.end());
        face.vertex_ids = loop;
        face.oriented_normal = kLocalOutward[lf / 2 * 2 + 1];
        const Vec3 a = mesh.vertices[loop[0]], b = mesh.vertices[loop[1]],
                   c = mesh.vertices[loop[2]], d = mesh.vertices[loop[3]];
        face.area = quad_area(a, b, c, d);
        face.centroid = (a + b + c + d) / 4.0;
        it->second = face.id;
        mesh.faces.push_back(face);
      }
      Face& face = mesh.faces[it->second];
      if (face.adjacent_elements[0] < 0) face.adjacent_elements[0] = el.id;
      else if (face.adjacent_elements[1] < 0) face.adjacent_elements[1] = el.id;
      else
        throw Error("import_mesh: face " + std::to_string(face.id) +
                    " shared by more than two elements");
      el.face_ids[lf] = face.id;
    }
    mesh.elements.push_back(el);
    mesh.meshsize = std::max(mesh.meshsize, el.diameter);
  }
  if (mesh.elements.empty()) throw Error("import_mesh: no elements");

  mesh.boundary_components = detect_boundary_components(mesh);
  for (int c = 0; c < static_cast<int>(mesh.boundary_components.size()); ++c)
    for (int f : mesh.boundary_components[c]) mesh.faces[f].boundary_component = c;
  validate_mesh(mesh);
  return mesh;
}

}  // namespace

Mesh import_mesh_json(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("import_mesh: malformed JSON: ") + e.what());
  }
  if (!doc.contains("vertices") || !doc.contains("elements"))
    throw Error("import_mesh: missing \"vertices\" or \"elements\" array");

  std::vector<Vec3> vertices;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_array() || v.size() != 3)
      throw Error("import_mesh: vertex entries must be [x, y, z]");
    Vec3 p{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
    if (!p.finite()) throw Error("import_mesh: non-finite vertex coordinate");
    vertices.push_back(p);
  }
  std::vector<std::array<int, 8>> cells;
  for (const auto& c : doc["elements"]) {
    if (!c.is_array() || c.size() != 8)
      throw Error("import_mesh: element entries must list 8 corner ids");
    std::array<int, 8> cell;
    for (int i = 0; i < 8; ++i) cell[i] = c[i].get<int>();
    cells.push_back(cell);
  }
  return mesh_from_arrays(std::move(vertices), cells);
}

Mesh import_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("import_mesh: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return import_mesh_json(text);
}

void export_mesh(const Mesh& mesh, const std::string& path) {
  nlohmann::json doc;
  auto& vs = doc["vertices"] = nlohmann::json::array();
  for (const Vec3& v : mesh.vertices) vs.push_back({v.x, v.y, v.z});
  auto& es = doc["elements"] = nlohmann::json::array();
  for (const Element& el : mesh.elements) {
    nlohmann::json cell = nlohmann::json::array();
    for (int v : el.vertex_ids) cell.push_back(v);
    es.push_back(cell);
  }
  std::ofstream out(path);
  if (!out) throw Error("export_mesh: cannot open " + path);
  out << doc.dump(1, '\t') << "\n";
}

}  // namespace pdwg

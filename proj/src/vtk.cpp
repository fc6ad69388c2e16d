#include "pdwg/vtk.hpp"

#include <fstream>

namespace pdwg {

void export_vtk(const Mesh& mesh, const std::vector<Vec3>& cell_field,
                const std::string& path, const std::string& field_name) {
  if (cell_field.size() != mesh.elements.size())
    throw Error("export_vtk: field size does not match element count");
  std::ofstream out(path);
  if (!out) throw Error("export_vtk: cannot open " + path);
  out.precision(17);

  out << "# vtk DataFile Version 3.0\n";
  out << "pdwg cell field\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertices.size() << " double\n";
  for (const Vec3& v : mesh.vertices) out << v.x << " " << v.y << " " << v.z << "\n";

  // VTK_HEXAHEDRON wants the bottom quad loop then the top quad loop; our
  // corners are in tensor-product order.
  constexpr int kVtkOrder[8] = {0, 1, 3, 2, 4, 5, 7, 6};
  out << "CELLS " << mesh.elements.size() << " " << 9 * mesh.elements.size() << "\n";
  for (const Element& el : mesh.elements) {
    out << 8;
    for (int c : kVtkOrder) out << " " << el.vertex_ids[c];
    out << "\n";
  }
  out << "CELL_TYPES " << mesh.elements.size() << "\n";
  for (std::size_t e = 0; e < mesh.elements.size(); ++e) out << 12 << "\n";

  out << "CELL_DATA " << mesh.elements.size() << "\n";
  out << "VECTORS " << field_name << " double\n";
  for (const Vec3& v : cell_field) out << v.x << " " << v.y << " " << v.z << "\n";
  if (!out) throw Error("export_vtk: write failed for " + path);
}

}  // namespace pdwg

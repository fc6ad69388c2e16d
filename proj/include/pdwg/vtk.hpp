#ifndef PDWG_VTK_HPP
#define PDWG_VTK_HPP

#include <string>
#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Writes a legacy ASCII VTK unstructured grid with hexahedral cells and one
/// per-cell vector array.
void export_vtk(const Mesh& mesh, const std::vector<Vec3>& cell_field,
                const std::string& path, const std::string& field_name = "u");

}  // namespace pdwg

#endif

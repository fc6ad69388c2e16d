#include "pdwg/weak_calculus.hpp"

#include <cmath>

namespace pdwg {

Vec3 tangential_reference_vector(const Vec3& oriented_normal) {
  const Vec3 axes[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  int best = 0;
  double best_align = std::abs(oriented_normal.x);
  for (int a = 1; a < 3; ++a) {
    const double align = std::abs(oriented_normal[a]);
    if (align < best_align) {
      best = a;
      best_align = align;
    }
  }
  return axes[best];
}

TangentialBasis tangential_basis(const Vec3& oriented_normal) {
  if (oriented_normal.norm() == 0.0) throw Error("tangential_basis: zero normal");
  const Vec3 n = oriented_normal.normalized();
  const Vec3 r = tangential_reference_vector(n);
  const Vec3 v1 = cross(r, n);
  const Vec3 v2 = cross(v1, n);
  return {v1.normalized(), v2.normalized()};
}

std::vector<TangentialBasis> face_bases(const Mesh& mesh) {
  std::vector<TangentialBasis> bases;
  bases.reserve(mesh.faces.size());
  for (const Face& f : mesh.faces) bases.push_back(tangential_basis(f.oriented_normal));
  return bases;
}

WeakOperatorTable weak_operator_table(const Element& element, const Mesh& mesh,
                                      const std::vector<TangentialBasis>& bases) {
  WeakOperatorTable table;
  for (int lf = 0; lf < 6; ++lf) {
    const Face& face = mesh.faces[element.face_ids[lf]];
    const Vec3& n = element.outward_normals[lf];
    table.grad_face[lf] = (face.area / element.volume) * n;
    for (int k = 0; k < 2; ++k)
      table.curl_face[lf][k] =
          -(face.area / element.volume) * bases[face.id].e_bn(k, n);
  }
  return table;
}

}  // namespace pdwg

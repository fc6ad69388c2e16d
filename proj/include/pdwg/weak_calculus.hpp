#ifndef PDWG_WEAK_CALCULUS_HPP
#define PDWG_WEAK_CALCULUS_HPP

#include <array>
#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Orthonormal tangent pair of a face, built once per face from its
/// prescribed orientation and shared by both adjacent elements.
struct TangentialBasis {
  Vec3 e1;  // r x n_tilde, normalized
  Vec3 e2;  // (r x n_tilde) x n_tilde, normalized

  Vec3 e(int k) const { return k == 0 ? e1 : e2; }
  /// e_bn^k = e^k x n for the side of the face with outward normal n.
  Vec3 e_bn(int k, const Vec3& outward_normal) const {
    return cross(e(k), outward_normal);
  }
};

/// Deterministic auxiliary vector r for a given face orientation: the axis
/// vector with the smallest |component along n|, ties broken x -> y -> z.
Vec3 tangential_reference_vector(const Vec3& oriented_normal);

TangentialBasis tangential_basis(const Vec3& oriented_normal);

/// Builds the tangential basis of every face of a mesh (indexed by face id).
std::vector<TangentialBasis> face_bases(const Mesh& mesh);

/// Closed-form discrete weak gradients / weak curls of the lowest-order
/// basis functions on one element. Interior basis functions have vanishing
/// weak operators; the face-supported ones reduce to single constant vectors.
struct WeakOperatorTable {
  // grad_face[i]   = weak gradient of {0, 1_{b,i}}           = |s_i| n_i / |T|
  // curl_face[i][k] = weak curl of {0, e^k_{b,i}}            = -e^k_{bn,i} |s_i| / |T|
  // grad_cell      = weak gradient of {1, 0}                 = 0
  // curl_cell[k]   = weak curl of {e^k, 0}                   = 0
  std::array<Vec3, 6> grad_face{};
  std::array<std::array<Vec3, 2>, 6> curl_face{};
  Vec3 grad_cell{0, 0, 0};
  std::array<Vec3, 3> curl_cell{};
};

WeakOperatorTable weak_operator_table(const Element& element, const Mesh& mesh,
                                      const std::vector<TangentialBasis>& bases);

}  // namespace pdwg

#endif

#ifndef PDWG_QUADRATURE_HPP
#define PDWG_QUADRATURE_HPP

#include <vector>

#include "pdwg/mesh.hpp"

namespace pdwg {

/// Mapped quadrature points and weights; weights sum to the measure of the
/// cell or face the rule was built for.
struct QuadratureRule {
  std::vector<Vec3> points;
  std::vector<double> weights;

  template <typename F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) s += weights[i] * f(points[i]);
    return s;
  }
};

/// Gauss-Legendre nodes and weights on [-1, 1], exact through degree 2q-1.
void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights);

/// Tensor-product Gauss rule with q points per axis on an axis-aligned cell.
QuadratureRule cell_rule(const Element& element, int q);

/// Tensor-product Gauss rule with q points per axis on an axis-aligned
/// quadrilateral face.
QuadratureRule face_rule(const Face& face, const Mesh& mesh, int q);

/// Same rules for a raw axis-aligned box [lo, hi]; used by cell_rule and by
/// integration over hole volumes.
QuadratureRule box_rule(const Vec3& lo, const Vec3& hi, int q);

}  // namespace pdwg

#endif

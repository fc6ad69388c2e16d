#include "pdwg/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace pdwg {

void gauss_legendre(int q, std::vector<double>& nodes, std::vector<double>& weights) {
  if (q < 1) throw Error("gauss_legendre: q must be >= 1");
  nodes.assign(q, 0.0);
  weights.assign(q, 0.0);
  // Newton iteration on P_q with the Chebyshev initial guess. Converges to
  // machine precision in a handful of steps for any practical q.
  for (int i = 0; i < (q + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= q; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[q - 1 - i] = x;
    weights[i] = w;
    weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) nodes[q / 2] = 0.0;
}

QuadratureRule box_rule(const Vec3& lo, const Vec3& hi, int q) {
  std::vector<double> xn, xw;
  gauss_legendre(q, xn, xw);
  const Vec3 mid = (lo + hi) * 0.5;
  const Vec3 half = (hi - lo) * 0.5;
  QuadratureRule rule;
  rule.points.reserve(q * q * q);
  rule.weights.reserve(q * q * q);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < q; ++j)
      for (int i = 0; i < q; ++i) {
        rule.points.push_back({mid.x + half.x * xn[i], mid.y + half.y * xn[j],
                               mid.z + half.z * xn[k]});
        rule.weights.push_back(xw[i] * xw[j] * xw[k] * half.x * half.y * half.z);
      }
  return rule;
}

QuadratureRule cell_rule(const Element& element, int q) {
  return box_rule(element.lo, element.hi, q);
}

QuadratureRule face_rule(const Face& face, const Mesh& mesh, int q) {
  if (q < 1) throw Error("face_rule: q must be >= 1");
  // Axis-aligned planar quad: find the constant axis, integrate over the
  // in-plane bounding rectangle.
  Vec3 lo = mesh.vertices[face.vertex_ids[0]];
  Vec3 hi = lo;
  for (int v : face.vertex_ids) {
    const Vec3& p = mesh.vertices[v];
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
  }
  int axis = -1;
  for (int a = 0; a < 3; ++a)
    if (std::abs(face.oriented_normal[a]) > 0.5) axis = a;
  if (axis < 0 || hi[axis] - lo[axis] > 1e-12 * (1.0 + (hi - lo).norm()))
    throw Error("face_rule: face " + std::to_string(face.id) +
                " is not an axis-aligned planar quad");
  const int u = (axis + 1) % 3, v = (axis + 2) % 3;

  std::vector<double> xn, xw;
  gauss_legendre(q, xn, xw);
  const double um = 0.5 * (lo[u] + hi[u]), uh = 0.5 * (hi[u] - lo[u]);
  const double vm = 0.5 * (lo[v] + hi[v]), vh = 0.5 * (hi[v] - lo[v]);
  QuadratureRule rule;
  rule.points.reserve(q * q);
  rule.weights.reserve(q * q);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < q; ++i) {
      Vec3 p;
      p[axis] = lo[axis];
      p[u] = um + uh * xn[i];
      p[v] = vm + vh * xn[j];
      rule.points.push_back(p);
      rule.weights.push_back(xw[i] * xw[j] * uh * vh);
    }
  return rule;
}

}  // namespace pdwg

#ifndef PDWG_GEOMETRY_HPP
#define PDWG_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pdwg {

/// Error type thrown by all pdwg components.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Point or vector in R^3.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const {
    const double n = norm();
    if (n == 0.0) throw Error("Vec3::normalized: zero vector");
    return *this / n;
  }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.dot(b); }
inline Vec3 cross(const Vec3& a, const Vec3& b) { return a.cross(b); }

std::ostream& operator<<(std::ostream& os, const Vec3& v);

/// Symmetric 3x3 matrix (row-major storage of all nine entries).
struct Mat3 {
  std::array<double, 9> a{};

  static Mat3 identity() {
    Mat3 m;
    m.a = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    return m;
  }
  static Mat3 zero() { return Mat3{}; }

  double operator()(int i, int j) const { return a[3 * i + j]; }
  double& operator()(int i, int j) { return a[3 * i + j]; }

  Vec3 apply(const Vec3& v) const {
    return {a[0] * v.x + a[1] * v.y + a[2] * v.z,
            a[3] * v.x + a[4] * v.y + a[5] * v.z,
            a[6] * v.x + a[7] * v.y + a[8] * v.z};
  }

  Mat3& operator+=(const Mat3& o) {
    for (int i = 0; i < 9; ++i) a[i] += o.a[i];
    return *this;
  }
  Mat3& operator*=(double s) {
    for (double& v : a) v *= s;
    return *this;
  }

  double max_asymmetry() const;

  /// Smallest eigenvalue of the symmetric part (closed-form cubic).
  double min_eigenvalue() const;
};

}  // namespace pdwg

#endif

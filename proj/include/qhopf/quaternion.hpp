#pragma once

#include <cmath>
#include <complex>

namespace qhopf {

/// Real quaternion w + x i + y j + z k.
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_ = 0.0, double y_ = 0.0, double z_ = 0.0)
      : w(w_), x(x_), y(y_), z(z_) {}

  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  /// Embeds a complex number along the (1, i) plane.
  static constexpr Quaternion from_complex(std::complex<double> c) { return {c.real(), c.imag()}; }

  constexpr bool operator==(const Quaternion&) const = default;
};

/// q = z1 + z2 j with z1 = w + x i and z2 = y + z i.
struct ComplexPair {
  std::complex<double> z1;
  std::complex<double> z2;
};

constexpr ComplexPair to_complex_pair(const Quaternion& q) { return {{q.w, q.x}, {q.y, q.z}}; }
constexpr Quaternion from_complex_pair(const ComplexPair& c) {
  return {c.z1.real(), c.z1.imag(), c.z2.real(), c.z2.imag()};
}

/// Hamilton product.
constexpr Quaternion mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion imag(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }
constexpr double real(const Quaternion& q) { return q.w; }
constexpr double norm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return mul(a, b); }
constexpr Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) { return {q.w / s, q.x / s, q.y / s, q.z / s}; }

/// Unit-norm check at the 1e-12 level used throughout the library.
inline bool is_unit(const Quaternion& q, double tol = 1e-12) { return std::abs(norm2(q) - 1.0) <= tol; }

/// conj(q) / |q|^2. Throws ZeroQuaternion when |q|^2 < 1e-300.
Quaternion inverse(const Quaternion& q);

/// exp(v) for a purely imaginary v: cos|v| + (v/|v|) sin|v|.
/// The real part of v is ignored.
Quaternion exp_imaginary(const Quaternion& v);

}  // namespace qhopf

#include "qhopf/quaternion.hpp"

#include "qhopf/errors.hpp"

namespace qhopf {

namespace {
constexpr double kZeroNorm2 = 1e-300;
constexpr double kSmallAngle = 1e-8;
}  // namespace

Quaternion inverse(const Quaternion& q) {
  const double n2 = norm2(q);
  if (n2 < kZeroNorm2) throw ZeroQuaternion();
  return conj(q) / n2;
}

Quaternion exp_imaginary(const Quaternion& v) {
  const double angle = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
  // sin(a)/a, with its Taylor series below the cutoff
  const double sinc = angle < kSmallAngle ? 1.0 - angle * angle / 6.0 : std::sin(angle) / angle;
  return {std::cos(angle), sinc * v.x, sinc * v.y, sinc * v.z};
}

}  // namespace qhopf

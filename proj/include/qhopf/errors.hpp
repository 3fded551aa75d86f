#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qhopf {

/// Base class for every recoverable failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroQuaternion : public Error {
 public:
  ZeroQuaternion() : Error("quaternion has zero norm; inverse undefined") {}
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(double norm2)
      : Error("state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")"),
        norm2_(norm2) {}
  double norm2() const { return norm2_; }

 private:
  double norm2_;
};

/// Bracket endpoints of a root search have the same gap sign.
class NoSignChange : public Error {
 public:
  NoSignChange(double gap_lo, double gap_hi)
      : Error("crossing gap does not change sign on the bracket (gap(lo) = " +
              std::to_string(gap_lo) + ", gap(hi) = " + std::to_string(gap_hi) + ")"),
        gap_lo_(gap_lo),
        gap_hi_(gap_hi) {}
  double gap_lo() const { return gap_lo_; }
  double gap_hi() const { return gap_hi_; }

 private:
  double gap_lo_;
  double gap_hi_;
};

class VanishingOverlap : public Error {
 public:
  VanishingOverlap(std::size_t index, double modulus)
      : Error("overlap between samples " + std::to_string(index) + " and " +
              std::to_string(index + 1) + " vanishes (|<k|k+1>| = " + std::to_string(modulus) +
              ")"),
        index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

/// File output failure; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qhopf

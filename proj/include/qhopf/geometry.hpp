#pragma once

#include <array>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "qhopf/model.hpp"
#include "qhopf/quaternion.hpp"

namespace qhopf {

/// Two-qubit pure state as a quaternionic spinor q0|0>_Q + q1|1>_Q,
/// with q0 = a0 + a1 j and q1 = a2 + a3 j.
struct Quaterbit {
  Quaternion q0;
  Quaternion q1;
};

/// Image of a state under the second Hopf fibration S^7 -> S^4.
struct HopfImage {
  Complex schmidt_term;      // a0 conj(a2) + a1 conj(a3)
  Complex concurrence_term;  // a0 a3 - a1 a2
  std::array<double, 5> x{};
  bool at_infinity = false;  // |q1|^2 <= 1e-12; x is then (1, 0, 0, 0, 0)

  double concurrence() const;
};

Quaterbit to_quaterbit(const Amplitudes& a);
Amplitudes from_quaterbit(const Quaterbit& s);

HopfImage hopf_project(const Quaterbit& s);

/// q0 conj(q1) / |q1|^2, the stereographic image in R^4. Its complex pair is
/// (S, -C) / |q1|^2 with S, C the Schmidt and concurrence terms.
Quaternion hopf_quaternion(const Quaterbit& s);

/// Chart coordinate x = q1 q0^-1, so that s = (1, x) q / sqrt(1 + |x|^2)
/// for a unit quaternion q.
Quaternion projective_coordinate(const Quaterbit& s);
Quaterbit from_projective(const Quaternion& x, const Quaternion& phase = Quaternion(1.0));

/// Pure-state concurrence 2|a0 a3 - a1 a2|.
double concurrence(const Amplitudes& a);

struct ClosedConcurrence {
  double value = 0.0;  // |sin theta| of the ground sector
  bool at_crossing = false;
  double even_value = 0.0;
  double odd_value = 0.0;
};
ClosedConcurrence ground_concurrence_closed(const ModelParams& p);

/// <phi|psi>_Q = conj(phi.q0) psi.q0 + conj(phi.q1) psi.q1.
Quaternion quaternionic_inner(const Quaterbit& psi, const Quaterbit& phi);

/// Fubini-Study distance on S^4: 2 arccos |<phi|psi>_Q|, in [0, pi].
double fs_distance(const Quaterbit& a, const Quaterbit& b);

/// A = Im(conj(x) dx) / (1 + |x|^2).
Quaternion connection_form(const Quaternion& x, const Quaternion& dx);

/// Point on the family (cos(theta/2), sin(theta/2) p) q.
struct TransportState {
  double theta = 0.0;
  Quaternion p{1.0};
  Quaternion q{1.0};
  double t = 0.0;

  Quaterbit spinor() const;
};

/// 1/2 (1 - cos theta) Im(conj(p) dp), the connection restricted to the
/// TransportState family at fixed theta.
Quaternion family_connection(double theta, const Quaternion& p, const Quaternion& dp);

/// Path-ordered exp(-integral A) over sampled chart coordinates, starting
/// from q = 1. Each step uses A at the chord midpoint. Requires >= 3 samples.
Quaternion parallel_transport(std::span<const Quaternion> curve);
Quaternion parallel_transport(const std::function<Quaternion(double)>& curve, int steps);

/// -Arg prod <psi_k|psi_k+1> over a closed sequence, in (-pi, pi].
double pancharatnam_phase(std::span<const Amplitudes> states);

/// Reduces an angle to (-pi, pi].
double wrap_angle(double a);

struct BerryConnection {
  double coefficient = 0.0;  // of d eta
  bool at_crossing = false;
};
BerryConnection berry_connection_closed(const ModelParams& p);

/// -2 pi (1 - cos theta1) for an even ground state, 0 for an odd one.
double berry_phase_closed(const ModelParams& p);

struct BerryResult {
  double closed_form = 0.0;
  double principal = 0.0;
  double numeric = 0.0;
  int steps = 0;
  bool at_crossing = false;

  /// |wrap(closed_form - numeric)|
  double wrap_error() const;
  bool consistent(double tolerance) const { return wrap_error() <= tolerance; }
};

/// Closed form plus the Pancharatnam estimate over steps uniformly spaced
/// rotation angles. Requires steps >= 16.
BerryResult berry_phase(const ModelParams& p, int steps);

/// Rotated ground states at eta_k = 2 pi k / steps, k = 0..steps-1, followed
/// by the k = 0 state again.
std::vector<Amplitudes> ground_loop(const ModelParams& p, int steps);

/// Ratio a0/a3 (even) or a1/a2 (odd) of a parity-sector state, embedded in
/// the complex plane of the quaternions; flipped takes the reciprocal.
Quaternion sector_chart(const Amplitudes& a, Sector s, bool flipped = false);

/// Holonomy of parallel transport around the eta loop in the sector chart.
/// Its angle atan2(x, w) agrees with the Berry phase mod 2 pi.
Quaternion transport_holonomy(const ModelParams& p, int steps);

}  // namespace qhopf

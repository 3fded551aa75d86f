#include "qhopf/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "qhopf/errors.hpp"

namespace qhopf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNormTolerance = 1e-9;
constexpr double kInfinityNorm2 = 1e-12;
constexpr double kOverlapFloor = 1e-12;

void require_normalized(double n2) {
  if (std::abs(n2 - 1.0) > kNormTolerance) throw NotNormalized(n2);
}

double norm2(const Amplitudes& a) {
  double n2 = 0.0;
  for (const Complex& c : a) n2 += std::norm(c);
  return n2;
}

Complex inner(const Amplitudes& bra, const Amplitudes& ket) {
  Complex acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += std::conj(bra[i]) * ket[i];
  return acc;
}

}  // namespace

double HopfImage::concurrence() const { return std::min(1.0, 2.0 * std::abs(concurrence_term)); }

Quaterbit to_quaterbit(const Amplitudes& a) {
  require_normalized(norm2(a));
  return {from_complex_pair({a[0], a[1]}), from_complex_pair({a[2], a[3]})};
}

Amplitudes from_quaterbit(const Quaterbit& s) {
  const ComplexPair c0 = to_complex_pair(s.q0);
  const ComplexPair c1 = to_complex_pair(s.q1);
  return {c0.z1, c0.z2, c1.z1, c1.z2};
}

HopfImage hopf_project(const Quaterbit& s) {
  const double n0 = norm2(s.q0);
  const double n1 = norm2(s.q1);
  require_normalized(n0 + n1);

  const Amplitudes a = from_quaterbit(s);
  HopfImage img;
  img.schmidt_term = a[0] * std::conj(a[2]) + a[1] * std::conj(a[3]);
  img.concurrence_term = a[0] * a[3] - a[1] * a[2];

  if (n1 <= kInfinityNorm2) {
    img.at_infinity = true;
    img.x = {1.0, 0.0, 0.0, 0.0, 0.0};
    return img;
  }

  // the quaternionic product must carry the same two complex terms
  const ComplexPair h = to_complex_pair(s.q0 * conj(s.q1));
  if (std::abs(h.z1 - img.schmidt_term) > 1e-12 || std::abs(h.z2 + img.concurrence_term) > 1e-12)
    throw std::logic_error("hopf_project: quaternionic and amplitude forms disagree");

  img.x = {n0 - n1, 2.0 * img.schmidt_term.real(), 2.0 * img.schmidt_term.imag(),
           2.0 * img.concurrence_term.real(), 2.0 * img.concurrence_term.imag()};
  return img;
}

Quaternion hopf_quaternion(const Quaterbit& s) { return s.q0 * inverse(s.q1); }

Quaternion projective_coordinate(const Quaterbit& s) { return s.q1 * inverse(s.q0); }

Quaterbit from_projective(const Quaternion& x, const Quaternion& phase) {
  const double scale = 1.0 / std::sqrt(1.0 + norm2(x));
  return {scale * phase, scale * (x * phase)};
}

double concurrence(const Amplitudes& a) {
  require_normalized(norm2(a));
  return std::min(1.0, 2.0 * std::abs(a[0] * a[3] - a[1] * a[2]));
}

ClosedConcurrence ground_concurrence_closed(const ModelParams& p) {
  ClosedConcurrence c;
  c.even_value = std::abs(std::sin(even_spectrum(p).theta));
  c.odd_value = std::abs(std::sin(odd_spectrum(p).theta));
  const PhaseLabel label = classify(crossing_gap(p));
  c.at_crossing = label == PhaseLabel::F;
  c.value = label == PhaseLabel::O ? c.odd_value : c.even_value;
  return c;
}

Quaternion quaternionic_inner(const Quaterbit& psi, const Quaterbit& phi) {
  return conj(phi.q0) * psi.q0 + conj(phi.q1) * psi.q1;
}

double fs_distance(const Quaterbit& a, const Quaterbit& b) {
  const double overlap = std::min(1.0, norm(quaternionic_inner(a, b)));
  return 2.0 * std::acos(overlap);
}

Quaternion connection_form(const Quaternion& x, const Quaternion& dx) {
  return imag(conj(x) * dx) / (1.0 + norm2(x));
}

Quaterbit TransportState::spinor() const {
  return {std::cos(0.5 * theta) * q, std::sin(0.5 * theta) * (p * q)};
}

Quaternion family_connection(double theta, const Quaternion& p, const Quaternion& dp) {
  return 0.5 * (1.0 - std::cos(theta)) * imag(conj(p) * dp);
}

Quaternion parallel_transport(std::span<const Quaternion> curve) {
  if (curve.size() < 3) throw std::invalid_argument("parallel_transport needs at least two steps");
  Quaternion q(1.0);
  for (std::size_t k = 0; k + 1 < curve.size(); ++k) {
    const Quaternion mid = 0.5 * (curve[k] + curve[k + 1]);
    const Quaternion a = connection_form(mid, curve[k + 1] - curve[k]);
    q = exp_imaginary(-a) * q;
  }
  return q;
}

Quaternion parallel_transport(const std::function<Quaternion(double)>& curve, int steps) {
  if (steps < 2) throw std::invalid_argument("parallel_transport needs at least two steps");
  std::vector<Quaternion> samples(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k)
    samples[static_cast<std::size_t>(k)] = curve(static_cast<double>(k) / steps);
  return parallel_transport(samples);
}

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

double pancharatnam_phase(std::span<const Amplitudes> states) {
  if (states.size() < 3) throw std::invalid_argument("pancharatnam_phase needs at least three states");
  if (std::norm(inner(states.front(), states.back())) < 1.0 - kNormTolerance)
    throw std::invalid_argument("pancharatnam_phase needs a closed sequence");
  Complex product = 1.0;
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const Complex overlap = inner(states[k], states[k + 1]);
    const double modulus = std::abs(overlap);
    if (modulus < kOverlapFloor) throw VanishingOverlap(k, modulus);
    product *= overlap / modulus;
  }
  return wrap_angle(-std::arg(product));
}

BerryConnection berry_connection_closed(const ModelParams& p) {
  BerryConnection c;
  const PhaseLabel label = classify(crossing_gap(p));
  c.at_crossing = label == PhaseLabel::F;
  c.coefficient = label == PhaseLabel::O ? 0.0 : 1.0 - std::cos(even_spectrum(p).theta);
  return c;
}

double berry_phase_closed(const ModelParams& p) {
  const double c = berry_connection_closed(p).coefficient;
  return c == 0.0 ? 0.0 : -kTwoPi * c;
}

double BerryResult::wrap_error() const { return std::abs(wrap_angle(closed_form - numeric)); }

std::vector<Amplitudes> ground_loop(const ModelParams& p, int steps) {
  if (steps < 2) throw std::invalid_argument("ground_loop needs at least two steps");
  std::vector<Amplitudes> states;
  states.reserve(static_cast<std::size_t>(steps) + 1);
  ModelParams at = p;
  for (int k = 0; k < steps; ++k) {
    at.eta = kTwoPi * static_cast<double>(k) / steps;
    states.push_back(rotated_ground_state(at).amplitudes);
  }
  states.push_back(states.front());
  return states;
}

BerryResult berry_phase(const ModelParams& p, int steps) {
  if (steps < 16) throw std::invalid_argument("berry_phase requires at least 16 steps");
  BerryResult r;
  r.steps = steps;
  r.at_crossing = classify(crossing_gap(p)) == PhaseLabel::F;
  r.closed_form = berry_phase_closed(p);
  r.principal = wrap_angle(r.closed_form);
  r.numeric = pancharatnam_phase(ground_loop(p, steps));
  return r;
}

Quaternion sector_chart(const Amplitudes& a, Sector s, bool flipped) {
  Complex num = s == Sector::Even ? a[0] : a[1];
  Complex den = s == Sector::Even ? a[3] : a[2];
  if (flipped) std::swap(num, den);
  return Quaternion::from_complex(num / den);
}

Quaternion transport_holonomy(const ModelParams& p, int steps) {
  const std::vector<Amplitudes> loop = ground_loop(p, steps);
  const Sector sector = classify(crossing_gap(p)) == PhaseLabel::O ? Sector::Odd : Sector::Even;
  // amplitude moduli are constant around the loop, so one chart covers it
  const Amplitudes& first = loop.front();
  const bool flipped = sector == Sector::Even ? std::abs(first[0]) > std::abs(first[3])
                                              : std::abs(first[1]) > std::abs(first[2]);
  std::vector<Quaternion> chart;
  chart.reserve(loop.size());
  for (const Amplitudes& a : loop) chart.push_back(sector_chart(a, sector, flipped));
  return parallel_transport(chart);
}

}  // namespace qhopf

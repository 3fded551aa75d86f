#include "qhopf/model.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "qhopf/errors.hpp"

namespace qhopf {

Matrix4 adjoint(const Matrix4& m) {
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = std::conj(m(c, r));
  return out;
}

Amplitudes apply(const Matrix4& m, const Amplitudes& v) {
  Amplitudes out{};
  for (int r = 0; r < 4; ++r) {
    Complex acc = 0.0;
    for (int c = 0; c < 4; ++c) acc += m(r, c) * v[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::Gamma: return "gamma";
    case Parameter::Jz: return "jz";
    case Parameter::Dz: return "dz";
    case Parameter::Lambda: return "lambda";
    case Parameter::Bz: return "bz";
  }
  return "?";
}

std::optional<Parameter> parse_parameter(std::string_view name) {
  for (Parameter p : {Parameter::Gamma, Parameter::Jz, Parameter::Dz, Parameter::Lambda, Parameter::Bz})
    if (to_string(p) == name) return p;
  return std::nullopt;
}

double ModelParams::get(Parameter p) const {
  switch (p) {
    case Parameter::Gamma: return gamma;
    case Parameter::Jz: return jz;
    case Parameter::Dz: return dz;
    case Parameter::Lambda: return lambda;
    case Parameter::Bz: return bz;
  }
  return 0.0;
}

ModelParams ModelParams::with(Parameter p, double value) const {
  ModelParams out = *this;
  switch (p) {
    case Parameter::Gamma: out.gamma = value; break;
    case Parameter::Jz: out.jz = value; break;
    case Parameter::Dz: out.dz = value; break;
    case Parameter::Lambda: out.lambda = value; break;
    case Parameter::Bz: out.bz = value; break;
  }
  return out;
}

bool ModelParams::finite() const {
  return std::isfinite(gamma) && std::isfinite(jz) && std::isfinite(dz) && std::isfinite(lambda) &&
         std::isfinite(bz) && std::isfinite(eta);
}

std::string_view to_string(Sector s) { return s == Sector::Even ? "even" : "odd"; }

std::string_view to_string(PhaseLabel l) {
  switch (l) {
    case PhaseLabel::P: return "P";
    case PhaseLabel::F: return "F";
    case PhaseLabel::O: return "O";
  }
  return "?";
}

Matrix4 hamiltonian_matrix(const ModelParams& p) {
  Matrix4 h;
  h(0, 0) = -p.lambda - p.jz;
  h(3, 3) = p.lambda - p.jz;
  h(0, 3) = -p.gamma;
  h(3, 0) = -p.gamma;
  h(1, 1) = p.bz + p.jz;
  h(2, 2) = -p.bz + p.jz;
  h(1, 2) = Complex(-1.0, -p.dz);
  h(2, 1) = Complex(-1.0, p.dz);
  return h;
}

Matrix4 rotated_hamiltonian(const ModelParams& p) {
  const Matrix4 h = hamiltonian_matrix(p);
  // diagonal of U in the computational basis: exp(-i eta m) with m = (sz1 + sz2)/2
  const std::array<Complex, 4> u{std::polar(1.0, -p.eta), Complex(1.0), Complex(1.0),
                                 std::polar(1.0, p.eta)};
  Matrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      out(r, c) = std::conj(u[static_cast<std::size_t>(r)]) * h(r, c) * u[static_cast<std::size_t>(c)];
  return out;
}

SectorSpectrum even_spectrum(const ModelParams& p) {
  SectorSpectrum s;
  s.sector = Sector::Even;
  const double r = std::hypot(p.lambda, p.gamma);
  s.e_plus = -p.jz + r;
  s.e_minus = -p.jz - r;
  s.phi = 0.0;
  if (r == 0.0) {
    s.degenerate_angle = true;
    s.theta = 0.0;
  } else {
    // cos(theta) = -lambda/r, sin(theta) = -gamma/r
    s.theta = std::atan2(-p.gamma, -p.lambda);
  }
  const double c = std::cos(0.5 * s.theta);
  const double sn = std::sin(0.5 * s.theta);
  s.eigvec_plus = {Complex(c), Complex(sn)};
  s.eigvec_minus = {Complex(sn), Complex(-c)};
  return s;
}

SectorSpectrum odd_spectrum(const ModelParams& p) {
  SectorSpectrum s;
  s.sector = Sector::Odd;
  const double off = std::hypot(1.0, p.dz);
  const double r = std::sqrt(p.bz * p.bz + p.dz * p.dz + 1.0);
  s.e_plus = p.jz + r;
  s.e_minus = p.jz - r;
  s.theta = std::atan2(off, p.bz);
  // phase of the <10|H|01> entry -1 + i dz
  s.phi = std::atan2(p.dz, -1.0);
  const double c = std::cos(0.5 * s.theta);
  const double sn = std::sin(0.5 * s.theta);
  const Complex phase = std::polar(1.0, s.phi);
  s.eigvec_plus = {Complex(c), phase * sn};
  s.eigvec_minus = {Complex(sn), -phase * c};
  return s;
}

double crossing_gap(const ModelParams& p) {
  return -2.0 * p.jz - std::hypot(p.lambda, p.gamma) + std::sqrt(p.bz * p.bz + p.dz * p.dz + 1.0);
}

PhaseLabel classify(double gap) {
  if (std::abs(gap) <= kCrossingTolerance) return PhaseLabel::F;
  return gap < 0.0 ? PhaseLabel::P : PhaseLabel::O;
}

Amplitudes embed(Sector s, const Spinor2& v) {
  if (s == Sector::Even) return {v[0], Complex(0.0), Complex(0.0), v[1]};
  return {Complex(0.0), v[0], v[1], Complex(0.0)};
}

GroundState ground_state(const ModelParams& p) {
  const double gap = crossing_gap(p);
  GroundState g;
  g.label = classify(gap);
  g.sector = g.label == PhaseLabel::O ? Sector::Odd : Sector::Even;
  const SectorSpectrum s = g.sector == Sector::Even ? even_spectrum(p) : odd_spectrum(p);
  g.energy = s.e_minus;
  g.amplitudes = embed(g.sector, s.eigvec_minus);
  return g;
}

Eigenpair2 hermitian2_lower(double a, double d, Complex b) {
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double r = std::hypot(half, std::abs(b));
  Eigenpair2 out;
  out.value = mean - r;
  if (std::abs(b) == 0.0) {
    out.vector = a <= d ? Spinor2{Complex(1.0), Complex(0.0)} : Spinor2{Complex(0.0), Complex(1.0)};
    return out;
  }
  // Two algebraically equivalent null vectors of (H - value); keep the larger one.
  const Spinor2 u{b, Complex(out.value - a)};
  const Spinor2 w{Complex(out.value - d), std::conj(b)};
  const double nu = std::norm(u[0]) + std::norm(u[1]);
  const double nw = std::norm(w[0]) + std::norm(w[1]);
  const Spinor2& v = nu >= nw ? u : w;
  const double n = std::sqrt(std::max(nu, nw));
  out.vector = {v[0] / n, v[1] / n};
  return out;
}

GroundState rotated_ground_state(const ModelParams& p) {
  const Matrix4 h = rotated_hamiltonian(p);
  const double gap = crossing_gap(p);
  GroundState g;
  g.label = classify(gap);
  g.sector = g.label == PhaseLabel::O ? Sector::Odd : Sector::Even;
  const auto [lo, hi] = g.sector == Sector::Even ? std::pair{0, 3} : std::pair{1, 2};
  const Eigenpair2 e = hermitian2_lower(h(lo, lo).real(), h(hi, hi).real(), h(lo, hi));
  g.energy = e.value;
  g.amplitudes = embed(g.sector, e.vector);
  return g;
}

double find_crossing(const ModelParams& p, Parameter axis, double lo, double hi, double tol) {
  if (!(lo < hi)) throw InvalidSpec("crossing bracket requires lo < hi");
  if (!(tol > 0.0)) throw InvalidSpec("crossing tolerance must be positive");
  double g_lo = crossing_gap(p.with(axis, lo));
  const double g_hi = crossing_gap(p.with(axis, hi));
  if (g_lo == 0.0) return lo;
  if (g_hi == 0.0) return hi;
  if ((g_lo < 0.0) == (g_hi < 0.0)) throw NoSignChange(g_lo, g_hi);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double g_mid = crossing_gap(p.with(axis, mid));
    if (g_mid == 0.0) return mid;
    if ((g_mid < 0.0) == (g_lo < 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double residual(const Matrix4& h, const Amplitudes& v, double energy) {
  const Amplitudes hv = apply(h, v);
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) acc += std::norm(hv[i] - energy * v[i]);
  return std::sqrt(acc);
}

}  // namespace qhopf

#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

namespace qhopf {

using Complex = std::complex<double>;

/// Amplitudes on |00>, |01>, |10>, |11>.
using Amplitudes = std::array<Complex, 4>;
using Spinor2 = std::array<Complex, 2>;

/// Dense 4x4 complex matrix in the computational basis.
struct Matrix4 {
  std::array<Complex, 16> data{};

  Complex& operator()(int r, int c) { return data[static_cast<std::size_t>(4 * r + c)]; }
  const Complex& operator()(int r, int c) const { return data[static_cast<std::size_t>(4 * r + c)]; }

  bool operator==(const Matrix4&) const = default;
};

Matrix4 adjoint(const Matrix4& m);
Amplitudes apply(const Matrix4& m, const Amplitudes& v);

/// Couplings that may be swept. eta is not a sweep axis.
enum class Parameter { Gamma, Jz, Dz, Lambda, Bz };

std::string_view to_string(Parameter p);
std::optional<Parameter> parse_parameter(std::string_view name);

/// Couplings of the two-qubit XYZ model with z-axis DM interaction and
/// uniform (lambda) plus staggered (bz) longitudinal fields. Energies are in
/// units of the exchange constant; eta is the z-rotation angle in radians.
struct ModelParams {
  double gamma = 0.0;
  double jz = 0.0;
  double dz = 0.0;
  double lambda = 0.0;
  double bz = 0.0;
  double eta = 0.0;

  double get(Parameter p) const;
  ModelParams with(Parameter p, double value) const;
  bool finite() const;
};

enum class Sector { Even, Odd };
enum class PhaseLabel { P, F, O };

std::string_view to_string(Sector s);
std::string_view to_string(PhaseLabel l);

/// Spectrum of one parity block. Eigenvectors are in the block basis
/// ({|00>,|11>} for Even, {|01>,|10>} for Odd).
struct SectorSpectrum {
  Sector sector = Sector::Even;
  double e_plus = 0.0;
  double e_minus = 0.0;
  double theta = 0.0;  // mixing angle
  double phi = 0.0;    // relative phase of the second component; 0 in the even block
  Spinor2 eigvec_plus{};
  Spinor2 eigvec_minus{};
  bool degenerate_angle = false;
};

struct GroundState {
  double energy = 0.0;
  Sector sector = Sector::Even;
  Amplitudes amplitudes{};
  PhaseLabel label = PhaseLabel::P;
};

/// Gap magnitude at or below which two ground levels count as crossing.
inline constexpr double kCrossingTolerance = 1e-12;

Matrix4 hamiltonian_matrix(const ModelParams& p);

/// U^dagger H U with U = exp[-i (eta/2)(sz1 + sz2)], eta taken from p.
Matrix4 rotated_hamiltonian(const ModelParams& p);

SectorSpectrum even_spectrum(const ModelParams& p);
SectorSpectrum odd_spectrum(const ModelParams& p);

/// E_-^even - E_-^odd. Negative: even ground (P), positive: odd ground (O).
double crossing_gap(const ModelParams& p);

PhaseLabel classify(double gap);

/// Lower of the two sector ground levels, embedded in the 4-dim basis.
/// Ties within kCrossingTolerance resolve to the even sector.
GroundState ground_state(const ModelParams& p);

/// Ground state of rotated_hamiltonian(p), obtained by diagonalizing the
/// rotated parity block directly.
GroundState rotated_ground_state(const ModelParams& p);

/// Bisection for the zero of crossing_gap along one parameter axis.
/// Throws NoSignChange when gap(lo) and gap(hi) share a sign.
double find_crossing(const ModelParams& p, Parameter axis, double lo, double hi, double tol);

/// Lower eigenpair of the Hermitian block [[a, b], [conj(b), d]].
struct Eigenpair2 {
  double value = 0.0;
  Spinor2 vector{};
};
Eigenpair2 hermitian2_lower(double a, double d, Complex b);

Amplitudes embed(Sector s, const Spinor2& v);
double residual(const Matrix4& h, const Amplitudes& v, double energy);

}  // namespace qhopf

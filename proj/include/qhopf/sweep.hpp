#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qhopf/model.hpp"

namespace qhopf {

/// Uniform grid axis including both endpoints.
struct Axis {
  Parameter name = Parameter::Gamma;
  double min = 0.0;
  double max = 1.0;
  int count = 2;

  double at(int i) const;
  double spacing() const { return (max - min) / (count - 1); }
};

enum class Quantity { Energy, PhaseLabel, Concurrence, BerryClosed, BerryPrincipal, Gap };

std::string_view to_string(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);

/// Every quantity in canonical order.
std::vector<Quantity> all_quantities();

struct GridSpec {
  Axis x;
  std::optional<Axis> y;  // absent for a 1 x N sweep
  ModelParams fixed;
  std::vector<Quantity> quantities = all_quantities();

  /// Throws InvalidSpec.
  void validate() const;
  bool has(Quantity q) const;
  int nx() const { return x.count; }
  int ny() const { return y ? y->count : 1; }
};

struct CellRecord {
  double x = 0.0;
  double y = 0.0;
  double energy = 0.0;
  Sector sector = Sector::Even;
  PhaseLabel label = PhaseLabel::P;
  double gap = 0.0;
  double concurrence = 0.0;
  double berry_closed = 0.0;
  double berry_principal = 0.0;
};

struct LocusPoint {
  double x = 0.0;
  double y = 0.0;
};

struct SweepResult {
  GridSpec spec;
  std::vector<CellRecord> cells;  // row-major, x fastest
  std::vector<LocusPoint> crossing_locus;

  const CellRecord& at(int ix, int iy) const {
    return cells[static_cast<std::size_t>(iy) * static_cast<std::size_t>(spec.nx()) +
                 static_cast<std::size_t>(ix)];
  }
};

/// Bisection tolerance, in the x coordinate, for locus points.
inline constexpr double kLocusTolerance = 1e-9;

/// Parameters at grid node (ix, iy).
ModelParams node_params(const GridSpec& spec, int ix, int iy);

CellRecord evaluate_cell(const ModelParams& p, double x, double y);

/// Evaluates every node, then scans each row for sign changes of the gap.
/// workers = 0 uses the hardware concurrency. Output does not depend on it.
SweepResult run_sweep_2d(const GridSpec& spec, unsigned workers = 0);

SweepResult run_sweep_1d(const Axis& axis, const ModelParams& fixed,
                         std::vector<Quantity> quantities = all_quantities(), unsigned workers = 0);

/// Spot check of closed-form Berry phases against the Pancharatnam estimate
/// on at most max_samples evenly strided cells away from the crossing.
struct BerryCheck {
  std::size_t samples = 0;
  double max_wrap_error = 0.0;
};
BerryCheck verify_berry(const SweepResult& result, int steps, std::size_t max_samples = 25);

}  // namespace qhopf

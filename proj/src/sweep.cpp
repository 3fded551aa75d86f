#include "qhopf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "qhopf/errors.hpp"
#include "qhopf/geometry.hpp"

namespace qhopf {

double Axis::at(int i) const {
  if (i == count - 1) return max;
  return min + (max - min) * static_cast<double>(i) / static_cast<double>(count - 1);
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Energy: return "energy";
    case Quantity::PhaseLabel: return "phase_label";
    case Quantity::Concurrence: return "concurrence";
    case Quantity::BerryClosed: return "berry_closed";
    case Quantity::BerryPrincipal: return "berry_principal";
    case Quantity::Gap: return "gap";
  }
  return "?";
}

std::vector<Quantity> all_quantities() {
  return {Quantity::Energy, Quantity::PhaseLabel, Quantity::Gap, Quantity::Concurrence,
          Quantity::BerryClosed, Quantity::BerryPrincipal};
}

std::optional<Quantity> parse_quantity(std::string_view name) {
  for (Quantity q : all_quantities())
    if (to_string(q) == name) return q;
  return std::nullopt;
}

namespace {

void validate_axis(const Axis& a) {
  if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max))
    throw InvalidSpec("axis " + std::string(to_string(a.name)) + " needs finite min < max");
  if (a.count < 2) throw InvalidSpec("axis " + std::string(to_string(a.name)) + " needs count >= 2");
}

}  // namespace

void GridSpec::validate() const {
  validate_axis(x);
  if (y) {
    validate_axis(*y);
    if (y->name == x.name) throw InvalidSpec("x and y axes must be different parameters");
  }
  if (!fixed.finite()) throw InvalidSpec("fixed parameters must be finite");
  if (quantities.empty()) throw InvalidSpec("at least one quantity is required");
}

bool GridSpec::has(Quantity q) const {
  return std::find(quantities.begin(), quantities.end(), q) != quantities.end();
}

ModelParams node_params(const GridSpec& spec, int ix, int iy) {
  ModelParams p = spec.fixed.with(spec.x.name, spec.x.at(ix));
  if (spec.y) p = p.with(spec.y->name, spec.y->at(iy));
  return p;
}

CellRecord evaluate_cell(const ModelParams& p, double x, double y) {
  CellRecord c;
  c.x = x;
  c.y = y;
  const GroundState g = ground_state(p);
  c.energy = g.energy;
  c.sector = g.sector;
  c.label = g.label;
  c.gap = crossing_gap(p);
  c.concurrence = ground_concurrence_closed(p).value;
  c.berry_closed = berry_phase_closed(p);
  c.berry_principal = wrap_angle(c.berry_closed);
  return c;
}

SweepResult run_sweep_2d(const GridSpec& spec, unsigned workers) {
  spec.validate();
  SweepResult result;
  result.spec = spec;
  const int nx = spec.nx();
  const int ny = spec.ny();
  const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  result.cells.resize(total);

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

  auto work = [&](unsigned first) {
    for (std::size_t idx = first; idx < total; idx += workers) {
      const int ix = static_cast<int>(idx % static_cast<std::size_t>(nx));
      const int iy = static_cast<int>(idx / static_cast<std::size_t>(nx));
      const double yv = spec.y ? spec.y->at(iy) : std::nan("");
      result.cells[idx] = evaluate_cell(node_params(spec, ix, iy), spec.x.at(ix), yv);
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work, t);
    work(0);
  }

  for (int iy = 0; iy < ny; ++iy) {
    const ModelParams row = node_params(spec, 0, iy);
    for (int ix = 0; ix < nx; ++ix) {
      const CellRecord& here = result.at(ix, iy);
      if (here.gap == 0.0) {
        result.crossing_locus.push_back({here.x, here.y});
        continue;
      }
      if (ix + 1 == nx) break;
      const CellRecord& next = result.at(ix + 1, iy);
      if (next.gap == 0.0 || (here.gap < 0.0) == (next.gap < 0.0)) continue;
      const double root = find_crossing(row, spec.x.name, here.x, next.x, kLocusTolerance);
      result.crossing_locus.push_back({root, here.y});
    }
  }
  return result;
}

SweepResult run_sweep_1d(const Axis& axis, const ModelParams& fixed, std::vector<Quantity> quantities,
                         unsigned workers) {
  GridSpec spec;
  spec.x = axis;
  spec.fixed = fixed;
  spec.quantities = std::move(quantities);
  return run_sweep_2d(spec, workers);
}

BerryCheck verify_berry(const SweepResult& result, int steps, std::size_t max_samples) {
  BerryCheck check;
  const std::size_t total = result.cells.size();
  if (total == 0 || max_samples == 0) return check;
  const std::size_t stride = std::max<std::size_t>(1, total / max_samples);
  for (std::size_t idx = 0; idx < total && check.samples < max_samples; idx += stride) {
    const CellRecord& c = result.cells[idx];
    if (c.label == PhaseLabel::F) continue;
    const int ix = static_cast<int>(idx % static_cast<std::size_t>(result.spec.nx()));
    const int iy = static_cast<int>(idx / static_cast<std::size_t>(result.spec.nx()));
    const BerryResult b = berry_phase(node_params(result.spec, ix, iy), steps);
    check.max_wrap_error = std::max(check.max_wrap_error, b.wrap_error());
    ++check.samples;
  }
  return check;
}

}  // namespace qhopf

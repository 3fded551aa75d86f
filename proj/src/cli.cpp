#include "qhopf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qhopf/errors.hpp"
#include "qhopf/geometry.hpp"
#include "qhopf/io.hpp"

namespace qhopf {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(v)) throw InvalidSpec(what + ": not a finite number: '" + s + "'");
  return v;
}

struct Record {
  ModelParams params;
  SectorSpectrum even;
  SectorSpectrum odd;
  GroundState ground;
  double gap;
  double concurrence;
  BerryConnection connection;
  double berry_closed;
};

Record make_record(const ModelParams& p) {
  Record r{p, even_spectrum(p), odd_spectrum(p), ground_state(p), crossing_gap(p), 0.0, {}, 0.0};
  r.concurrence = ground_concurrence_closed(p).value;
  r.connection = berry_connection_closed(p);
  r.berry_closed = berry_phase_closed(p);
  return r;
}

}  // namespace

Axis parse_axis(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 4) throw InvalidSpec("axis '" + text + "' must look like name:min:max:count");
  const auto name = parse_parameter(parts[0]);
  if (!name) throw InvalidSpec("unknown axis parameter '" + parts[0] + "' (gamma, jz, dz, lambda, bz)");
  Axis a;
  a.name = *name;
  a.min = parse_double(parts[1], "axis min");
  a.max = parse_double(parts[2], "axis max");
  std::size_t used = 0;
  try {
    a.count = std::stoi(parts[3], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != parts[3].size()) throw InvalidSpec("axis count must be an integer: '" + parts[3] + "'");
  return a;
}

std::string spectrum_report(const ModelParams& p) {
  const Record r = make_record(p);
  std::ostringstream os;
  os << "gamma = " << num(p.gamma) << '\n'
     << "jz = " << num(p.jz) << '\n'
     << "dz = " << num(p.dz) << '\n'
     << "lambda = " << num(p.lambda) << '\n'
     << "bz = " << num(p.bz) << '\n'
     << "even.e_plus = " << num(r.even.e_plus) << '\n'
     << "even.e_minus = " << num(r.even.e_minus) << '\n'
     << "even.theta1 = " << num(r.even.theta) << '\n'
     << "even.degenerate_angle = " << (r.even.degenerate_angle ? "true" : "false") << '\n'
     << "odd.e_plus = " << num(r.odd.e_plus) << '\n'
     << "odd.e_minus = " << num(r.odd.e_minus) << '\n'
     << "odd.theta2 = " << num(r.odd.theta) << '\n'
     << "odd.phi = " << num(r.odd.phi) << '\n'
     << "gap = " << num(r.gap) << '\n'
     << "ground.sector = " << to_string(r.ground.sector) << '\n'
     << "ground.energy = " << num(r.ground.energy) << '\n'
     << "ground.label = " << to_string(r.ground.label) << '\n'
     << "concurrence = " << num(r.concurrence) << '\n'
     << "berry.connection = " << num(r.connection.coefficient) << '\n'
     << "berry.closed = " << num(r.berry_closed) << '\n'
     << "berry.principal = " << num(wrap_angle(r.berry_closed)) << '\n';
  return os.str();
}

std::string spectrum_json(const ModelParams& p) {
  const Record r = make_record(p);
  auto sector = [](const SectorSpectrum& s) {
    return nlohmann::json{{"e_plus", s.e_plus},
                          {"e_minus", s.e_minus},
                          {"theta", s.theta},
                          {"phi", s.phi},
                          {"degenerate_angle", s.degenerate_angle}};
  };
  nlohmann::json amps = nlohmann::json::array();
  for (const Complex& a : r.ground.amplitudes) amps.push_back({a.real(), a.imag()});
  const nlohmann::json j{
      {"params", {{"gamma", p.gamma}, {"jz", p.jz}, {"dz", p.dz}, {"lambda", p.lambda}, {"bz", p.bz}}},
      {"even", sector(r.even)},
      {"odd", sector(r.odd)},
      {"gap", r.gap},
      {"ground",
       {{"sector", to_string(r.ground.sector)},
        {"energy", r.ground.energy},
        {"label", to_string(r.ground.label)},
        {"amplitudes", amps}}},
      {"concurrence", r.concurrence},
      {"berry", {{"connection", r.connection.coefficient},
                 {"closed", r.berry_closed},
                 {"principal", wrap_angle(r.berry_closed)}}}};
  return j.dump(2) + "\n";
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  out << spectrum_report(cfg.params);
  if (!cfg.output.empty()) {
    try {
      write_file_atomic(cfg.output, spectrum_json(cfg.params));
    } catch (const IoError& e) {
      err << "error: " << e.what() << '\n';
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  GridSpec spec = cfg.grid;
  spec.fixed = cfg.params;
  try {
    spec.validate();
    for (Quantity q : cfg.svg_quantities)
      if (!spec.has(q)) throw InvalidSpec("--svg " + std::string(to_string(q)) + " is not among --quantities");
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const SweepResult result = run_sweep_2d(spec, cfg.workers);

  std::vector<std::filesystem::path> written;
  try {
    const std::filesystem::path parent = cfg.output.parent_path();
    if (!parent.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(parent, ec);
      if (ec) throw IoError("cannot create directory " + parent.string() + ": " + ec.message());
    }
    write_csv(result, cfg.output);
    written.push_back(cfg.output);
    written.push_back(locus_path(cfg.output));
    for (Quantity q : cfg.svg_quantities) {
      std::filesystem::path svg = cfg.output;
      svg += "." + std::string(to_string(q)) + ".svg";
      render_svg_heatmap(result, q, svg);
      written.push_back(svg);
    }
  } catch (const IoError& e) {
    for (const auto& p : written) {
      std::error_code ec;
      std::filesystem::remove(p, ec);
    }
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }

  out << "cells = " << result.cells.size() << '\n';
  for (Quantity q : spec.quantities) {
    if (q == Quantity::PhaseLabel) {
      std::size_t counts[3] = {0, 0, 0};
      for (const CellRecord& c : result.cells) ++counts[static_cast<int>(c.label)];
      out << "phase_label: P=" << counts[0] << " F=" << counts[1] << " O=" << counts[2] << '\n';
      continue;
    }
    double lo = cell_value(result.cells.front(), q), hi = lo;
    for (const CellRecord& c : result.cells) {
      lo = std::min(lo, cell_value(c, q));
      hi = std::max(hi, cell_value(c, q));
    }
    out << to_string(q) << ": min = " << num(lo) << ", max = " << num(hi) << '\n';
  }
  out << "locus_points = " << result.crossing_locus.size() << '\n';
  if (cfg.verify) {
    const BerryCheck check = verify_berry(result, cfg.steps);
    out << "verify: samples = " << check.samples << ", max |wrap(closed - numeric)| = "
        << num(check.max_wrap_error) << " (N = " << cfg.steps << ")\n";
  }
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
  return kExitOk;
}

int cmd_crossing(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double g_lo = crossing_gap(cfg.params.with(cfg.axis, cfg.lo));
  const double g_hi = crossing_gap(cfg.params.with(cfg.axis, cfg.hi));
  try {
    const double root = find_crossing(cfg.params, cfg.axis, cfg.lo, cfg.hi, cfg.tol);
    out << "axis = " << to_string(cfg.axis) << '\n'
        << "root = " << num(root) << '\n'
        << "gap(root) = " << num(crossing_gap(cfg.params.with(cfg.axis, root))) << '\n'
        << "gap(lo) = " << num(g_lo) << '\n'
        << "gap(hi) = " << num(g_hi) << '\n';
    return kExitOk;
  } catch (const NoSignChange& e) {
    err << "error: " << e.what() << '\n';
    out << "gap(lo) = " << num(e.gap_lo()) << '\n' << "gap(hi) = " << num(e.gap_hi()) << '\n';
    return kExitNoCrossing;
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_berry(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.steps < 16) {
    err << "error: --steps must be at least 16\n";
    return kExitUsage;
  }
  const BerryResult b = berry_phase(cfg.params, cfg.steps);
  if (b.at_crossing) err << "warning: parameters sit on the level crossing; the ground state is degenerate\n";
  const Quaternion hol = transport_holonomy(cfg.params, cfg.steps);
  out << "steps = " << b.steps << '\n'
      << "closed_form = " << num(b.closed_form) << '\n'
      << "principal = " << num(b.principal) << '\n'
      << "numeric = " << num(b.numeric) << '\n'
      << "wrap_error = " << num(b.wrap_error()) << '\n'
      << "transport = " << num(std::atan2(hol.x, hol.w)) << '\n';
  if (cfg.verify) {
    const int half = cfg.steps / 2;
    if (half < 16) {
      out << "verify: skipped, N/2 < 16\n";
    } else {
      const BerryResult coarse = berry_phase(cfg.params, half);
      out << "verify.steps = " << half << '\n' << "verify.wrap_error = " << num(coarse.wrap_error()) << '\n';
      if (b.wrap_error() > 0.0)
        out << "verify.ratio = " << num(coarse.wrap_error() / b.wrap_error()) << '\n';
      else
        out << "verify.ratio = exact\n";
    }
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra, concurrence and Berry phase of the two-qubit XYZ model with DM interaction"};
  app.set_config("--config", "", "key = value file with default flag values");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--gamma", cfg.params.gamma, "anisotropy");
  app.add_option("--jz", cfg.params.jz, "zz coupling");
  app.add_option("--dz", cfg.params.dz, "DM strength (z)");
  app.add_option("--lambda", cfg.params.lambda, "uniform field");
  app.add_option("--bz", cfg.params.bz, "nonuniform field");
  app.add_option("--eta", cfg.params.eta, "z-rotation angle (radians)");

  auto* spectrum = app.add_subcommand("spectrum", "sector spectra, ground state, concurrence, Berry phase");
  spectrum->add_option("--json", cfg.output, "also write a JSON record to this path");

  std::string x_axis, y_axis;
  std::vector<std::string> quantities, svgs;
  auto* sweep = app.add_subcommand("sweep", "evaluate a parameter grid and export CSV/SVG");
  sweep->add_option("--x", x_axis, "x axis as name:min:max:count")->required();
  sweep->add_option("--y", y_axis, "y axis as name:min:max:count (omit for a 1-d sweep)");
  sweep->add_option("--quantities", quantities, "comma-separated quantities")->delimiter(',');
  sweep->add_option("--out", cfg.output, "CSV output path")->required();
  sweep->add_option("--svg", svgs, "quantities to render as SVG heatmaps")->delimiter(',');
  sweep->add_option("--workers", cfg.workers, "worker threads (0 = all cores)");
  sweep->add_flag("--verify", cfg.verify, "spot-check Berry phases with the Pancharatnam estimate");
  sweep->add_option("--steps", cfg.steps, "loop samples for --verify");

  std::string axis_name = "gamma";
  auto* crossing = app.add_subcommand("crossing", "bisect the level crossing along one axis");
  crossing->add_option("--axis", axis_name, "parameter to vary");
  crossing->add_option("--lo", cfg.lo, "bracket start");
  crossing->add_option("--hi", cfg.hi, "bracket end");
  crossing->add_option("--tol", cfg.tol, "bracket width at termination");

  auto* berry = app.add_subcommand("berry", "closed-form and numeric Berry phase of the eta loop");
  berry->add_option("--steps", cfg.steps, "loop samples");
  berry->add_flag("--verify", cfg.verify, "also run N/2 and report the convergence ratio");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!cfg.params.finite()) throw InvalidSpec("model parameters must be finite");
    if (*spectrum) {
      cfg.subcommand = Subcommand::Spectrum;
      return cmd_spectrum(cfg, out, err);
    }
    if (*sweep) {
      cfg.subcommand = Subcommand::Sweep;
      cfg.grid.x = parse_axis(x_axis);
      if (!y_axis.empty()) cfg.grid.y = parse_axis(y_axis);
      if (!quantities.empty()) {
        cfg.grid.quantities.clear();
        for (Quantity q : all_quantities())
          for (const std::string& name : quantities)
            if (parse_quantity(name) == q) {
              cfg.grid.quantities.push_back(q);
              break;
            }
        for (const std::string& name : quantities)
          if (!parse_quantity(name)) throw InvalidSpec("--quantities: unknown quantity '" + name + "'");
      }
      for (const std::string& name : svgs) {
        const auto q = parse_quantity(name);
        if (!q) throw InvalidSpec("--svg: unknown quantity '" + name + "'");
        cfg.svg_quantities.push_back(*q);
      }
      if (cfg.verify && cfg.steps < 16) throw InvalidSpec("--steps must be at least 16");
      return cmd_sweep(cfg, out, err);
    }
    if (*crossing) {
      cfg.subcommand = Subcommand::Crossing;
      const auto axis = parse_parameter(axis_name);
      if (!axis) throw InvalidSpec("--axis: unknown parameter '" + axis_name + "'");
      cfg.axis = *axis;
      return cmd_crossing(cfg, out, err);
    }
    cfg.subcommand = Subcommand::Berry;
    return cmd_berry(cfg, out, err);
  } catch (const InvalidSpec& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace qhopf

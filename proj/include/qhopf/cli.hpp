#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qhopf/model.hpp"
#include "qhopf/sweep.hpp"

namespace qhopf {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNoCrossing = 3;

enum class Subcommand { Spectrum, Sweep, Crossing, Berry };

struct RunConfig {
  Subcommand subcommand = Subcommand::Spectrum;
  ModelParams params;

  // sweep
  GridSpec grid;
  std::filesystem::path output;  // sweep CSV, or spectrum JSON record when set
  std::vector<Quantity> svg_quantities;
  unsigned workers = 0;

  // crossing
  Parameter axis = Parameter::Gamma;
  double lo = 0.0;
  double hi = 2.0;
  double tol = 1e-12;

  // berry and sweep --verify
  bool verify = false;
  int steps = 4096;
};

/// Parses "name:min:max:count". Throws InvalidSpec.
Axis parse_axis(const std::string& text);

/// Key-value spectrum report, one "key = value" per line.
std::string spectrum_report(const ModelParams& p);
/// The same content as a JSON object.
std::string spectrum_json(const ModelParams& p);

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_crossing(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_berry(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full command line: parse, validate, dispatch. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qhopf

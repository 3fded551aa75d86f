#pragma once

#include <filesystem>
#include <string>

#include "qhopf/sweep.hpp"

namespace qhopf {

/// Scientific notation with 12 significant digits, e.g. -8.74695167942e-01.
std::string format_number(double v);

/// CSV body: header row, then one row per cell in row-major order (x fastest).
/// Columns: x name, y name (2-d only), then the selected subset of
/// energy, sector, label, gap, concurrence, berry_closed, berry_principal.
std::string csv_text(const SweepResult& result);

/// Locus sidecar: header "x,y" (or "x" for 1-d sweeps) and one point per row.
std::string locus_csv_text(const SweepResult& result);

/// Path of the locus sidecar for a CSV path: "<path>.locus.csv".
std::filesystem::path locus_path(const std::filesystem::path& csv);

/// Writes the CSV and its locus sidecar. Throws IoError; no partial file is
/// left behind on failure.
void write_csv(const SweepResult& result, const std::filesystem::path& path);

/// Value of a quantity in a cell. PhaseLabel maps P, F, O to -1, 0, 1.
double cell_value(const CellRecord& c, Quantity q);

std::string svg_heatmap_text(const SweepResult& result, Quantity quantity);
void render_svg_heatmap(const SweepResult& result, Quantity quantity, const std::filesystem::path& path);

/// Writes content to a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace qhopf

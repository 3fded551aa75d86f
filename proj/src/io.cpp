#include "qhopf/io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qhopf/errors.hpp"

namespace qhopf {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

namespace {

std::string fixed3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

void require_quantity(const SweepResult& r, Quantity q) {
  if (!r.spec.has(q))
    throw InvalidSpec("quantity " + std::string(to_string(q)) + " was not requested in the sweep");
}

}  // namespace

std::string csv_text(const SweepResult& result) {
  const GridSpec& spec = result.spec;
  std::ostringstream os;
  os << to_string(spec.x.name);
  if (spec.y) os << ',' << to_string(spec.y->name);
  if (spec.has(Quantity::Energy)) os << ",energy";
  if (spec.has(Quantity::PhaseLabel)) os << ",sector,label";
  if (spec.has(Quantity::Gap)) os << ",gap";
  if (spec.has(Quantity::Concurrence)) os << ",concurrence";
  if (spec.has(Quantity::BerryClosed)) os << ",berry_closed";
  if (spec.has(Quantity::BerryPrincipal)) os << ",berry_principal";
  os << '\n';
  for (const CellRecord& c : result.cells) {
    os << format_number(c.x);
    if (spec.y) os << ',' << format_number(c.y);
    if (spec.has(Quantity::Energy)) os << ',' << format_number(c.energy);
    if (spec.has(Quantity::PhaseLabel)) os << ',' << to_string(c.sector) << ',' << to_string(c.label);
    if (spec.has(Quantity::Gap)) os << ',' << format_number(c.gap);
    if (spec.has(Quantity::Concurrence)) os << ',' << format_number(c.concurrence);
    if (spec.has(Quantity::BerryClosed)) os << ',' << format_number(c.berry_closed);
    if (spec.has(Quantity::BerryPrincipal)) os << ',' << format_number(c.berry_principal);
    os << '\n';
  }
  return os.str();
}

std::string locus_csv_text(const SweepResult& result) {
  const bool two_d = result.spec.y.has_value();
  std::ostringstream os;
  os << (two_d ? "x,y\n" : "x\n");
  for (const LocusPoint& p : result.crossing_locus) {
    os << format_number(p.x);
    if (two_d) os << ',' << format_number(p.y);
    os << '\n';
  }
  return os.str();
}

std::filesystem::path locus_path(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p += ".locus.csv";
  return p;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      out.close();
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("cannot write " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot write " + path.string() + ": " + ec.message());
  }
}

void write_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_file_atomic(path, csv_text(result));
  try {
    write_file_atomic(locus_path(path), locus_csv_text(result));
  } catch (const IoError&) {
    std::error_code ec;
    std::filesystem::remove(path, ec);
    throw;
  }
}

double cell_value(const CellRecord& c, Quantity q) {
  switch (q) {
    case Quantity::Energy: return c.energy;
    case Quantity::PhaseLabel:
      return c.label == PhaseLabel::P ? -1.0 : (c.label == PhaseLabel::F ? 0.0 : 1.0);
    case Quantity::Concurrence: return c.concurrence;
    case Quantity::BerryClosed: return c.berry_closed;
    case Quantity::BerryPrincipal: return c.berry_principal;
    case Quantity::Gap: return c.gap;
  }
  return 0.0;
}

namespace {

struct Rgb {
  int r, g, b;
};

// dark blue -> teal -> green -> yellow
constexpr std::array<Rgb, 5> kStops{{{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string color_at(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * static_cast<double>(kStops.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), kStops.size() - 2);
  const double f = pos - static_cast<double>(i);
  auto mix = [f](int a, int b) { return static_cast<int>(std::lround(a + (b - a) * f)); };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(kStops[i].r, kStops[i + 1].r),
                mix(kStops[i].g, kStops[i + 1].g), mix(kStops[i].b, kStops[i + 1].b));
  return buf;
}

}  // namespace

std::string svg_heatmap_text(const SweepResult& result, Quantity quantity) {
  require_quantity(result, quantity);
  const GridSpec& spec = result.spec;
  const int nx = spec.nx();
  const int ny = spec.ny();

  constexpr double left = 70.0, top = 30.0, plot_w = 600.0, legend_w = 160.0, bottom = 50.0;
  const double plot_h = spec.y ? 600.0 : 60.0;
  const double cw = plot_w / nx;
  const double ch = plot_h / ny;
  const double width = left + plot_w + legend_w;
  const double height = top + plot_h + bottom;

  double lo = cell_value(result.cells.front(), quantity);
  double hi = lo;
  for (const CellRecord& c : result.cells) {
    lo = std::min(lo, cell_value(c, quantity));
    hi = std::max(hi, cell_value(c, quantity));
  }
  const double span = hi - lo;
  auto scale = [&](double v) { return span > 0.0 ? (v - lo) / span : 0.0; };

  auto px = [&](double x) { return left + ((x - spec.x.min) / spec.x.spacing() + 0.5) * cw; };
  auto py = [&](double y) {
    if (!spec.y) return top + 0.5 * plot_h;
    return top + plot_h - ((y - spec.y->min) / spec.y->spacing() + 0.5) * ch;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed3(width) << "\" height=\""
     << fixed3(height) << "\" viewBox=\"0 0 " << fixed3(width) << ' ' << fixed3(height) << "\">\n";
  os << "<title>" << to_string(quantity) << "</title>\n";
  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const double v = cell_value(result.at(ix, iy), quantity);
      os << "<rect x=\"" << fixed3(left + ix * cw) << "\" y=\"" << fixed3(top + plot_h - (iy + 1) * ch)
         << "\" width=\"" << fixed3(cw) << "\" height=\"" << fixed3(ch) << "\" fill=\""
         << color_at(scale(v)) << "\"/>\n";
    }
  }
  os << "</g>\n";

  if (!result.crossing_locus.empty()) {
    if (spec.y) {
      os << "<polyline id=\"locus\" fill=\"none\" stroke=\"white\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < result.crossing_locus.size(); ++i) {
        const LocusPoint& p = result.crossing_locus[i];
        os << (i ? " " : "") << fixed3(px(p.x)) << ',' << fixed3(py(p.y));
      }
      os << "\"/>\n";
    } else {
      os << "<g id=\"locus\" stroke=\"white\" stroke-width=\"1.5\">\n";
      for (const LocusPoint& p : result.crossing_locus)
        os << "<line x1=\"" << fixed3(px(p.x)) << "\" y1=\"" << fixed3(top) << "\" x2=\"" << fixed3(px(p.x))
           << "\" y2=\"" << fixed3(top + plot_h) << "\"/>\n";
      os << "</g>\n";
    }
  }

  // axes
  os << "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<text x=\"" << fixed3(left + 0.5 * plot_w) << "\" y=\"" << fixed3(top + plot_h + 35)
     << "\" text-anchor=\"middle\">" << to_string(spec.x.name) << " [" << format_number(spec.x.min) << ", "
     << format_number(spec.x.max) << "]</text>\n";
  if (spec.y)
    os << "<text x=\"20\" y=\"" << fixed3(top + 0.5 * plot_h) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
       << fixed3(top + 0.5 * plot_h) << ")\">" << to_string(spec.y->name) << " [" << format_number(spec.y->min)
       << ", " << format_number(spec.y->max) << "]</text>\n";
  os << "</g>\n";

  // legend: 20-step color bar, max at the top
  const double lx = left + plot_w + 20.0;
  const double bar_h = std::min(plot_h, 200.0);
  os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  constexpr int kLegendSteps = 20;
  for (int k = 0; k < kLegendSteps; ++k) {
    const double t = 1.0 - (k + 0.5) / kLegendSteps;
    os << "<rect x=\"" << fixed3(lx) << "\" y=\"" << fixed3(top + k * bar_h / kLegendSteps)
       << "\" width=\"20.000\" height=\"" << fixed3(bar_h / kLegendSteps) << "\" fill=\""
       << color_at(span > 0.0 ? t : 0.0) << "\"/>\n";
  }
  os << "<text x=\"" << fixed3(lx + 26) << "\" y=\"" << fixed3(top + 10) << "\">max " << format_number(hi)
     << "</text>\n";
  os << "<text x=\"" << fixed3(lx + 26) << "\" y=\"" << fixed3(top + bar_h) << "\">min " << format_number(lo)
     << "</text>\n";
  os << "</g>\n";
  os << "</svg>\n";
  return os.str();
}

void render_svg_heatmap(const SweepResult& result, Quantity quantity, const std::filesystem::path& path) {
  write_file_atomic(path, svg_heatmap_text(result, quantity));
}

}  // namespace qhopf

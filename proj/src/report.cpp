#include "kjell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "kjell/errors.hpp"
#include "kjell/interval_set.hpp"

namespace kjell {

namespace {

constexpr double kW = 640, kH = 420, kLeft = 78, kRight = 20, kTop = 36, kBottom = 52;
const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

std::string num(double v, const char* f = "%.4g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Axis {
  double lo = 0.0, hi = 1.0;
  bool log = false;
  double map(double v) const { return log ? std::log10(v) : v; }
};

// Pads a degenerate or empty range so every mapping stays finite.
void finish(Axis& a) {
  if (!(a.lo <= a.hi)) a.lo = 0.0, a.hi = 1.0;
  if (a.hi - a.lo < 1e-12 * std::max(1.0, std::abs(a.hi))) {
    a.lo -= 0.5;
    a.hi += 0.5;
  }
}

std::vector<double> ticks(const Axis& a) {
  std::vector<double> t;
  const double span = a.hi - a.lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 4.0)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * m) <= 6.0) {
      step *= m;
      break;
    }
  }
  for (double v = std::ceil(a.lo / step) * step; v <= a.hi + 1e-9 * step; v += step) t.push_back(v);
  return t;
}

void frame(std::ostream& os, const std::string& title, const std::string& xl, const std::string& yl,
           const Axis& ax, const Axis& ay) {
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(ax)) {
    const double px = kLeft + (t - ax.lo) / (ax.hi - ax.lo) * pw;
    os << "<line x1=\"" << num(px) << "\" y1=\"" << kTop + ph << "\" x2=\"" << num(px) << "\" y2=\""
       << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
       << (ax.log ? "1e" + num(t) : num(t)) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    const double py = kTop + ph - (t - ay.lo) / (ay.hi - ay.lo) * ph;
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(py) << "\" x2=\"" << kLeft << "\" y2=\"" << num(py)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(py + 4) << "\" text-anchor=\"end\">"
       << (ay.log ? "1e" + num(t) : num(t)) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kH - 10 << "\" text-anchor=\"middle\">" << escape(xl)
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << kTop + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << kTop + ph / 2 << ")\">" << escape(yl) << "</text>\n";
}

}  // namespace

void write_svg(std::ostream& os, const LinePlot& plot) {
  Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), plot.log_x};
  Axis ay{ax.lo, ax.hi, plot.log_y};
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!plot.log_x || x > 0) && (!plot.log_y || y > 0);
  };
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      ax.lo = std::min(ax.lo, ax.map(s.x[i]));
      ax.hi = std::max(ax.hi, ax.map(s.x[i]));
      ay.lo = std::min(ay.lo, ay.map(s.y[i]));
      ay.hi = std::max(ay.hi, ay.map(s.y[i]));
    }
  }
  finish(ax);
  finish(ay);
  frame(os, plot.title, plot.xlabel, plot.ylabel, ax, ay);
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!usable(s.x[i], s.y[i])) continue;
      const double px = kLeft + (ax.map(s.x[i]) - ax.lo) / (ax.hi - ax.lo) * pw;
      const double py = kTop + ph - (ay.map(s.y[i]) - ay.lo) / (ay.hi - ay.lo) * ph;
      os << num(px, "%.2f") << "," << num(py, "%.2f") << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << kLeft + 10 << "\" y=\"" << kTop + 16 + 14 * k << "\" fill=\"" << colour << "\">"
       << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
}

void write_svg(std::ostream& os, const HeatMap& map) {
  Axis ax{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(), false};
  Axis ay = ax;
  double vmax = 0.0;
  for (const auto& c : map.cells) {
    if (!std::isfinite(c.value)) continue;
    ax.lo = std::min(ax.lo, c.x);
    ax.hi = std::max(ax.hi, c.x);
    ay.lo = std::min(ay.lo, c.y);
    ay.hi = std::max(ay.hi, c.y);
    vmax = std::max(vmax, std::abs(c.value));
  }
  finish(ax);
  finish(ay);
  frame(os, map.title, map.xlabel, map.ylabel, ax, ay);
  const double pw = kW - kLeft - kRight, ph = kH - kTop - kBottom;
  for (const auto& c : map.cells) {
    if (!std::isfinite(c.value)) continue;
    const double s = vmax > 0 ? c.value / vmax : 0.0;  // in [-1, 1]
    const int red = s > 0 ? 255 : int(255 * (1 + s)), blue = s < 0 ? 255 : int(255 * (1 - s));
    const int green = int(255 * (1 - std::abs(s)));
    char colour[8];
    std::snprintf(colour, sizeof colour, "#%02x%02x%02x", red, green, blue);
    const double px = kLeft + (c.x - ax.lo) / (ax.hi - ax.lo) * pw;
    const double py = kTop + ph - (c.y - ay.lo) / (ay.hi - ay.lo) * ph;
    os << "<rect x=\"" << num(px - 4, "%.2f") << "\" y=\"" << num(py - 4, "%.2f")
       << "\" width=\"8\" height=\"8\" fill=\"" << colour << "\"/>\n";
  }
  os << "<text x=\"" << kW - kRight << "\" y=\"" << kTop - 6 << "\" text-anchor=\"end\">|value| max "
     << num(vmax) << "</text>\n";
  os << "</svg>\n";
}

void write_columns_csv(std::ostream& os, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw DomainError("CSV header and column count differ");
  for (std::size_t k = 0; k < header.size(); ++k) os << (k ? "," : "") << header[k];
  os << "\n";
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns)
    if (c.size() != rows) throw DomainError("CSV columns differ in length");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << fmt(columns[k][i]);
    os << "\n";
  }
}

std::vector<std::vector<double>> read_csv_rows(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  if (!std::getline(is, line)) return rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidSpec("non-numeric CSV cell '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kjell

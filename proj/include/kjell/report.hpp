#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kjell {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Line plot; on a log axis nonpositive samples are dropped.
struct LinePlot {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  bool log_y = false;
  std::vector<Series> series;
};
void write_svg(std::ostream& os, const LinePlot& plot);

struct HeatCell {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};
/// Scattered cells coloured on a diverging scale symmetric about zero.
struct HeatMap {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<HeatCell> cells;
};
void write_svg(std::ostream& os, const HeatMap& map);

/// Comma-separated columns of equal length, full precision.
void write_columns_csv(std::ostream& os, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& columns);

/// Numeric rows of a CSV with one header line.
std::vector<std::vector<double>> read_csv_rows(std::istream& is);

}  // namespace kjell

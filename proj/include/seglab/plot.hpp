#ifndef SEGLAB_PLOT_HPP
#define SEGLAB_PLOT_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace seglab {

/// Parsed aggregate CSV rows (run or sweep schema).
struct PlotSeries {
  std::string label;
  std::vector<double> passes;
  std::vector<double> values;
};

/// Thrown on schema mismatches, empty inputs, and other usage-level plot
/// failures; the CLI maps it to exit code 2.
class PlotInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads one or more aggregate CSVs. All files must share one schema, either
/// pass,method,geo_mean_ratio or pass,method,eta,geo_mean_ratio (sweep rows
/// are labelled "method eta=..."). Throws PlotInputError otherwise or when
/// no data rows are present.
std::vector<PlotSeries> read_plot_series(const std::vector<std::string>& paths);

/// Log-scaled-y line chart, one polyline per series; a pure function of the
/// parsed data.
std::string render_svg(const std::vector<PlotSeries>& series);

}  // namespace seglab

#endif  // SEGLAB_PLOT_HPP

#include "seglab/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace seglab {

namespace {

constexpr const char* kRunHeader = "pass,method,geo_mean_ratio";
constexpr const char* kSweepHeader = "pass,method,eta,geo_mean_ratio";

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
  return s;
}

}  // namespace

std::vector<PlotSeries> read_plot_series(
    const std::vector<std::string>& paths) {
  if (paths.empty()) throw PlotInputError("plot: no input files");
  std::string schema;
  std::map<std::string, PlotSeries> by_label;
  std::vector<std::string> label_order;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw PlotInputError("plot: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) {
      throw PlotInputError("plot: " + path + " is empty");
    }
    const std::string header = trim(line);
    if (header != kRunHeader && header != kSweepHeader) {
      throw PlotInputError("plot: " + path + " has an unknown schema");
    }
    if (schema.empty()) {
      schema = header;
    } else if (schema != header) {
      throw PlotInputError("plot: inputs mix schemas");
    }
    const bool sweep = header == kSweepHeader;
    while (std::getline(in, line)) {
      const std::string row = trim(line);
      if (row.empty()) continue;
      const auto fields = split(row);
      if (fields.size() != (sweep ? 4u : 3u)) {
        throw PlotInputError("plot: malformed row in " + path);
      }
      const std::string label =
          sweep ? fields[1] + " eta=" + fields[2] : fields[1];
      auto [it, inserted] = by_label.try_emplace(label);
      if (inserted) {
        it->second.label = label;
        label_order.push_back(label);
      }
      it->second.passes.push_back(std::stod(fields[0]));
      it->second.values.push_back(std::stod(fields[sweep ? 3 : 2]));
    }
  }
  std::vector<PlotSeries> series;
  series.reserve(label_order.size());
  for (const auto& label : label_order) series.push_back(by_label[label]);
  if (series.empty()) throw PlotInputError("plot: no data rows");
  return series;
}

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 30.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string coord(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

}  // namespace

std::string render_svg(const std::vector<PlotSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  double log_min = std::numeric_limits<double>::infinity();
  double log_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.passes.size(); ++i) {
      const double v = s.values[i];
      if (!std::isfinite(v) || v <= 0.0) continue;
      x_min = std::min(x_min, s.passes[i]);
      x_max = std::max(x_max, s.passes[i]);
      log_min = std::min(log_min, std::log10(v));
      log_max = std::max(log_max, std::log10(v));
    }
  }
  if (!std::isfinite(x_min) || !std::isfinite(log_min)) {
    throw PlotInputError("plot: no positive finite data to draw");
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  log_min = std::floor(log_min);
  log_max = std::ceil(log_max);
  if (log_max == log_min) log_max = log_min + 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto x_of = [&](double pass) {
    return kLeft + (pass - x_min) / (x_max - x_min) * plot_w;
  };
  const auto y_of = [&](double value) {
    return kTop +
           (1.0 - (std::log10(value) - log_min) / (log_max - log_min)) *
               plot_h;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
      << kWidth << ' ' << kHeight << "\">\n";
  svg << "<!-- generator: seglab plot v1 -->\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  svg << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333333\"/>\n";

  for (double decade = log_min; decade <= log_max + 0.5; decade += 1.0) {
    const double y = y_of(std::pow(10.0, decade));
    svg << "<line x1=\"" << kLeft << "\" y1=\"" << coord(y) << "\" x2=\""
        << kLeft + plot_w << "\" y2=\"" << coord(y)
        << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << kLeft - 8 << "\" y=\"" << coord(y + 4)
        << "\" text-anchor=\"end\" font-size=\"12\">1e"
        << static_cast<long long>(decade) << "</text>\n";
  }
  for (int tick = 0; tick <= 5; ++tick) {
    const double pass = x_min + (x_max - x_min) * tick / 5.0;
    const double x = x_of(pass);
    svg << "<line x1=\"" << coord(x) << "\" y1=\"" << kTop + plot_h
        << "\" x2=\"" << coord(x) << "\" y2=\"" << kTop + plot_h + 5
        << "\" stroke=\"#333333\"/>\n";
    svg << "<text x=\"" << coord(x) << "\" y=\"" << kTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-size=\"12\">"
        << static_cast<long long>(pass) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\" font-size=\"13\">passes</text>\n";
  svg << "<text x=\"20\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "20 "
      << kTop + plot_h / 2 << ")\">grad-norm ratio</text>\n";

  std::size_t color = 0;
  double legend_y = kTop + 14.0;
  for (const auto& s : series) {
    std::ostringstream points;
    bool any = false;
    for (std::size_t i = 0; i < s.passes.size(); ++i) {
      const double v = s.values[i];
      if (!std::isfinite(v) || v <= 0.0) continue;
      points << (any ? " " : "") << coord(x_of(s.passes[i])) << ','
             << coord(y_of(v));
      any = true;
    }
    const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(char*))];
    if (any) {
      svg << "<polyline fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"1.5\" points=\"" << points.str() << "\"/>\n";
    }
    svg << "<rect x=\"" << kLeft + plot_w - 170 << "\" y=\""
        << coord(legend_y - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << stroke << "\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w - 155 << "\" y=\"" << coord(legend_y)
        << "\" font-size=\"12\">" << s.label << "</text>\n";
    legend_y += 16.0;
    ++color;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace seglab

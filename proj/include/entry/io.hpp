#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "entry/sim.hpp"

namespace entry {

/// One row per log record; angles in degrees, distances in km. The residual column is
/// filled where a monitor sample exists for the record time and left empty elsewhere.
void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log,
                          const std::vector<MonitorSample>& residuals = {});

/// Terminal state, errors against the targets and run statistics.
std::string terminal_json(const TrajectoryLog& log, const Targets& targets);

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;  // scatter instead of a polyline
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  int width = 720;
  int height = 440;
};

/// Self-contained SVG. Output depends only on the plot contents.
std::string render_svg(const Plot& plot);

/// Writes `text` to `path`, throwing invalid-argument if the file cannot be opened.
void write_file(const std::string& path, const std::string& text);

}  // namespace entry

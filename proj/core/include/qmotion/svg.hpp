#pragma once

#include <string>

#include "qmotion/trajectory.hpp"

namespace qmotion {

struct PlotOptions {
  int width = 860;
  int height = 540;
  /// Plot log10|value| instead of value; negative-sign stretches are drawn
  /// dashed and flagged in the legend.
  bool log_abs = false;
};

/// Deterministic line plot of a table: same input, byte-identical output.
/// Polylines break at NaN samples. Throws IoError when the table has no
/// finite data to draw.
std::string render_svg(const DataTable& t, const PlotOptions& opt = {});

}  // namespace qmotion

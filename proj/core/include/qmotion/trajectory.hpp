#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qmotion {

/// One named column of a table.
struct Series {
  std::string label;
  std::vector<double> values;  ///< NaN marks a singular sample (plot gap)
};

/// Shared-abscissa data table: the unit of exchange between commands,
/// serializers, and the SVG renderer.
struct DataTable {
  std::string title;    ///< observable name
  std::string x_label;  ///< abscissa column name, e.g. "gt" or "beta"
  std::vector<std::pair<std::string, double>> params;  ///< fixed-parameter record
  std::vector<std::string> notes;                      ///< free-form header notes
  std::vector<double> x;
  std::vector<Series> series;
};

/// 12-significant-digit scientific notation, locale-independent.
std::string sci(double v);

/// '#'-prefixed header block (tool version, title, parameters, notes),
/// one header row of column names, comma-separated rows, Unix newlines.
std::string to_csv(const DataTable& t);

/// One top-level object with "params", "grid", and "series" keys.
std::string to_json(const DataTable& t);

/// Inverse of to_csv up to the parameter/note annotations it can recover.
/// Throws IoError on malformed input.
DataTable parse_csv(std::string_view text);

}  // namespace qmotion

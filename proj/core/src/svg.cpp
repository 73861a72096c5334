#include "qmotion/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "qmotion/errors.hpp"

namespace qmotion {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_tick(double v) {
  // Collapse -0 so tick labels are stable across platforms.
  if (v == 0.0) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double nice_num(double range, bool round_mode) {
  const double expv = std::floor(std::log10(range));
  const double f = range / std::pow(10.0, expv);
  double nf;
  if (round_mode) {
    nf = f < 1.5 ? 1.0 : f < 3.0 ? 2.0 : f < 7.0 ? 5.0 : 10.0;
  } else {
    nf = f <= 1.0 ? 1.0 : f <= 2.0 ? 2.0 : f <= 5.0 ? 5.0 : 10.0;
  }
  return nf * std::pow(10.0, expv);
}

std::vector<double> nice_ticks(double lo, double hi) {
  const double range = nice_num(hi - lo, false);
  const double step = nice_num(range / 5.0, true);
  const double start = std::ceil(lo / step) * step;
  std::vector<double> ticks;
  for (double v = start; v <= hi + 0.5 * step; v += step) {
    ticks.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    if (ticks.size() > 20) break;
  }
  return ticks;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  bool valid() const { return lo <= hi; }
  void pad() {
    if (lo == hi) {
      const double d = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
      lo -= d;
      hi += d;
    } else {
      const double d = 0.05 * (hi - lo);
      lo -= d;
      hi += d;
    }
  }
};

}  // namespace

std::string render_svg(const DataTable& t, const PlotOptions& opt) {
  if (opt.width < 320 || opt.height < 240) {
    throw ConfigError("plot size must be at least 320x240");
  }

  // Transformed sample matrix; NaN means gap. In log mode the magnitude is
  // plotted and the sign is kept so negative stretches can be dashed.
  const std::size_t n = t.x.size();
  std::vector<std::vector<double>> vals(t.series.size());
  std::vector<std::vector<int>> signs(t.series.size());
  Range xr, yr;
  for (std::size_t si = 0; si < t.series.size(); ++si) {
    vals[si].assign(n, std::numeric_limits<double>::quiet_NaN());
    signs[si].assign(n, 0);
    const Series& s = t.series[si];
    for (std::size_t i = 0; i < n && i < s.values.size(); ++i) {
      const double raw = s.values[i];
      if (!std::isfinite(t.x[i]) || !std::isfinite(raw)) continue;
      double v = raw;
      int sign = 1;
      if (opt.log_abs) {
        if (raw == 0.0) continue;
        sign = raw < 0.0 ? -1 : 1;
        v = std::log10(std::abs(raw));
      }
      vals[si][i] = v;
      signs[si][i] = sign;
      xr.include(t.x[i]);
      yr.include(v);
    }
  }
  if (!xr.valid() || !yr.valid()) {
    throw IoError("no finite data to plot");
  }
  xr.pad();
  yr.pad();

  const double ml = 72.0, mr = 18.0, mt = 42.0, mb = 48.0;
  const double pw = opt.width - ml - mr;
  const double ph = opt.height - mt - mb;
  const auto px = [&](double x) { return ml + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  const auto py = [&](double y) { return mt + ph - (y - yr.lo) / (yr.hi - yr.lo) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
         "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " +
         std::to_string(opt.height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  std::string title = t.title;
  if (opt.log_abs) title = "log10 magnitude of " + title;
  svg += "<text x=\"" + fmt(opt.width / 2.0) +
         "\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" "
         "text-anchor=\"middle\">" + title + "</text>\n";

  for (double v : nice_ticks(xr.lo, xr.hi)) {
    const double x = px(v);
    svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(mt) + "\" x2=\"" + fmt(x) +
           "\" y2=\"" + fmt(mt + ph) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(mt + ph + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           fmt_tick(v) + "</text>\n";
  }
  for (double v : nice_ticks(yr.lo, yr.hi)) {
    const double y = py(v);
    svg += "<line x1=\"" + fmt(ml) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(ml + pw) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(ml - 6.0) + "\" y=\"" + fmt(y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           fmt_tick(v) + "</text>\n";
  }
  svg += "<rect x=\"" + fmt(ml) + "\" y=\"" + fmt(mt) + "\" width=\"" + fmt(pw) +
         "\" height=\"" + fmt(ph) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  for (std::size_t si = 0; si < t.series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    // Break polylines at gaps and at sign flips (log mode only).
    std::string points;
    int seg_sign = 0;
    const auto flush = [&]() {
      if (points.empty()) return;
      svg += "<polyline fill=\"none\" stroke=\"";
      svg += color;
      svg += "\" stroke-width=\"1.5\"";
      if (seg_sign < 0) svg += " stroke-dasharray=\"6 4\"";
      svg += " points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (std::isnan(vals[si][i])) {
        flush();
        seg_sign = 0;
        continue;
      }
      if (signs[si][i] != seg_sign) {
        flush();
        seg_sign = signs[si][i];
      }
      if (!points.empty()) points += " ";
      points += fmt(px(t.x[i])) + "," + fmt(py(vals[si][i]));
    }
    flush();
  }

  double ly = mt + 16.0;
  for (std::size_t si = 0; si < t.series.size(); ++si) {
    const char* color = kPalette[si % kPaletteSize];
    bool has_negative = false;
    for (std::size_t i = 0; i < n; ++i) has_negative |= signs[si][i] < 0;
    const double lx = ml + pw - 180.0;
    svg += "<line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4.0) + "\" x2=\"" +
           fmt(lx + 26.0) + "\" y2=\"" + fmt(ly - 4.0) + "\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\"/>\n";
    std::string label = t.series[si].label;
    if (opt.log_abs && has_negative) label += " (dashed: negative)";
    svg += "<text x=\"" + fmt(lx + 32.0) + "\" y=\"" + fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + label + "</text>\n";
    ly += 16.0;
  }

  svg += "<text x=\"" + fmt(ml + pw / 2.0) + "\" y=\"" +
         fmt(opt.height - 12.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
         t.x_label + "</text>\n";
  svg += "</svg>\n";
  return svg;
}

}  // namespace qmotion

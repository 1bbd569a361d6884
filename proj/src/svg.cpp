#include "casimir/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "casimir/csv.hpp"

namespace casimir {

namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 74, kRight = 24, kTop = 40, kBottom = 56;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%g", v);
  return buffer;
}

struct Axis {
  bool log = false;
  double lo = 0.0, hi = 1.0;  // transformed coordinates

  double transform(double v) const { return log ? std::log10(v) : v; }
  bool usable(double v) const {
    return std::isfinite(v) && (!log || v > 0.0);
  }
  double fraction(double v) const {
    return (transform(v) - lo) / (hi - lo);
  }
};

Axis fit_axis(const std::vector<SvgSeries>& series, bool log, bool use_x) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double vx = s.x[i], vy = s.y[i];
      if (!std::isfinite(vx) || !std::isfinite(vy)) continue;
      const double v = use_x ? vx : vy;
      if (!axis.usable(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {
    throw Error("svg: no plottable points");
  }
  if (lo == hi) {
    if (log) {
      lo /= 1.25;
      hi *= 1.25;
    } else {
      const double pad = std::max(1.0, std::fabs(lo)) * 0.05;
      lo -= pad;
      hi += pad;
    }
  }
  axis.lo = axis.transform(lo);
  axis.hi = axis.transform(hi);
  if (!log) {
    const double pad = 0.04 * (axis.hi - axis.lo);
    axis.lo -= pad;
    axis.hi += pad;
  }
  return axis;
}

// Tick positions in data units.
std::vector<double> ticks_for(const Axis& axis) {
  std::vector<double> t;
  if (axis.log) {
    for (int k = static_cast<int>(std::ceil(axis.lo - 1e-9));
         k <= static_cast<int>(std::floor(axis.hi + 1e-9)); ++k) {
      t.push_back(std::pow(10.0, k));
    }
    if (t.size() < 2) {
      t.clear();
      for (int k = static_cast<int>(std::floor(axis.lo)) - 1;
           k <= static_cast<int>(std::ceil(axis.hi)); ++k) {
        for (double m : {1.0, 2.0, 5.0}) {
          const double v = m * std::pow(10.0, k);
          const double lv = std::log10(v);
          if (lv >= axis.lo - 1e-9 && lv <= axis.hi + 1e-9) t.push_back(v);
        }
      }
    }
    return t;
  }
  const double span = axis.hi - axis.lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  const double first = std::ceil(axis.lo / step) * step;
  for (double v = first; v <= axis.hi + 1e-9 * step; v += step) {
    t.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
  }
  return t;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_svg_lineplot(const std::string& path, const SvgPlotSpec& spec) {
  if (spec.series.empty()) throw Error("svg: no series");
  for (const auto& s : spec.series) {
    if (s.x.size() != s.y.size()) {
      throw Error("svg: series '" + s.label + "' has mismatched x/y sizes");
    }
  }
  const Axis xa = fit_axis(spec.series, spec.log_x, true);
  const Axis ya = fit_axis(spec.series, spec.log_y, false);

  const auto px = [&](double v) { return kLeft + xa.fraction(v) * kPlotW; };
  const auto py = [&](double v) {
    return kTop + (1.0 - ya.fraction(v)) * kPlotH;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";

  for (double tick : ticks_for(xa)) {
    const double x = px(tick);
    svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop) << "\" x2=\""
        << fmt(x) << "\" y2=\"" << fmt(kTop + kPlotH)
        << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + kPlotH + 16)
        << "\" text-anchor=\"middle\">" << fmt(tick) << "</text>\n";
  }
  for (double tick : ticks_for(ya)) {
    const double y = py(tick);
    svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(y) << "\" x2=\""
        << fmt(kLeft + kPlotW) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\">" << fmt(tick) << "</text>\n";
  }

  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\""
      << fmt(kPlotW) << "\" height=\"" << fmt(kPlotH)
      << "\" fill=\"none\" stroke=\"#555\"/>\n";

  if (!spec.title.empty()) {
    svg << "<text x=\"" << fmt(kLeft + kPlotW / 2) << "\" y=\"22\" "
           "text-anchor=\"middle\" font-size=\"14\">"
        << escape(spec.title) << "</text>\n";
  }
  if (!spec.x_label.empty()) {
    svg << "<text x=\"" << fmt(kLeft + kPlotW / 2) << "\" y=\""
        << fmt(kHeight - 14) << "\" text-anchor=\"middle\" font-size=\"12\">"
        << escape(spec.x_label) << "</text>\n";
  }
  if (!spec.y_label.empty()) {
    svg << "<text x=\"20\" y=\"" << fmt(kTop + kPlotH / 2)
        << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 "
        << "20 " << fmt(kTop + kPlotH / 2) << ")\">" << escape(spec.y_label)
        << "</text>\n";
  }

  for (size_t si = 0; si < spec.series.size(); ++si) {
    const auto& s = spec.series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    std::ostringstream points;
    bool open = false;
    auto flush = [&]() {
      const std::string p = points.str();
      if (open && !p.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"" << p << "\"/>\n";
      }
      points.str("");
      open = false;
    };
    for (size_t i = 0; i < s.x.size(); ++i) {
      if (!xa.usable(s.x[i]) || !ya.usable(s.y[i]) ||
          !std::isfinite(s.y[i]) || !std::isfinite(s.x[i])) {
        flush();
        continue;
      }
      points << fmt(px(s.x[i])) << "," << fmt(py(s.y[i])) << " ";
      open = true;
    }
    flush();
  }

  const double legend_x = kLeft + kPlotW - 170;
  double legend_y = kTop + 10;
  svg << "<rect x=\"" << fmt(legend_x - 8) << "\" y=\"" << fmt(legend_y - 6)
      << "\" width=\"170\" height=\""
      << fmt(6.0 + 18.0 * static_cast<double>(spec.series.size()))
      << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#bbb\"/>\n";
  for (size_t si = 0; si < spec.series.size(); ++si) {
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(*kPalette))];
    const double y = legend_y + 6 + 18.0 * static_cast<double>(si);
    svg << "<line x1=\"" << fmt(legend_x) << "\" y1=\"" << fmt(y)
        << "\" x2=\"" << fmt(legend_x + 22) << "\" y2=\"" << fmt(y)
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(legend_x + 28) << "\" y=\"" << fmt(y + 4)
        << "\">" << escape(spec.series[si].label) << "</text>\n";
  }

  svg << "</g>\n</svg>\n";
  write_file_atomic(path, svg.str());
}

}  // namespace casimir

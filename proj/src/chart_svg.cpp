#include <algorithm>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "colearn/scenario_io.hpp"

namespace colearn {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 56.0;
constexpr double kRight = 64.0;  // room for the secondary axis
constexpr double kTop = 52.0;
constexpr double kBottom = 48.0;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SeriesDef {
  const char* name;
  const char* color;
};

constexpr SeriesDef kStockSeries[6] = {
    {"H", "#1f77b4"}, {"A", "#ff7f0e"}, {"S", "#2ca02c"},
    {"T", "#d62728"}, {"U", "#9467bd"}, {"C", "#8c564b"},
};
constexpr SeriesDef kScoreSeries{"score", "#17becf"};

}  // namespace

std::string emit_chart_svg(const Trajectory& trajectory,
                           const ProportionalityTrace& trace) {
  const std::size_t n = trajectory.size();
  if (n == 0) {
    throw std::invalid_argument("cannot chart an empty trajectory");
  }
  if (trace.score.size() != n) {
    throw std::invalid_argument("trace is not aligned with the trajectory");
  }

  const double t0 = trajectory.times.front();
  const double t1 = trajectory.times.back();
  const double t_span = t1 > t0 ? t1 - t0 : 1.0;

  double score_lo = 0.0;
  double score_hi = 0.0;
  for (const double s : trace.score) {
    score_lo = std::min(score_lo, s);
    score_hi = std::max(score_hi, s);
  }
  if (score_hi - score_lo < 1e-12) {
    score_lo -= 0.5;
    score_hi += 0.5;
  }

  auto map_x = [&](double t) { return kLeft + (t - t0) / t_span * kPlotW; };
  auto map_y_stock = [&](double v) { return kTop + (1.0 - v) * kPlotH; };
  auto map_y_score = [&](double v) {
    return kTop + (1.0 - (v - score_lo) / (score_hi - score_lo)) * kPlotH;
  };

  std::string svg;
  svg.reserve(16384 + n * 80);
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kWidth) +
         "\" height=\"" + fmt(kHeight) + "\" viewBox=\"0 0 " + fmt(kWidth) +
         " " + fmt(kHeight) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg +=
      "  <text x=\"" + fmt(kWidth / 2) +
      "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      "font-size=\"15\" font-weight=\"bold\">Co-learning stocks and "
      "proportionality score</text>\n";

  // Plot frame and horizontal gridlines on the stock scale.
  svg += "  <g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = map_y_stock(i * 0.25);
    svg += "    <line x1=\"" + fmt(kLeft) + "\" y1=\"" + fmt(y) + "\" x2=\"" +
           fmt(kLeft + kPlotW) + "\" y2=\"" + fmt(y) + "\"/>\n";
  }
  svg += "  </g>\n";

  // Zero-reference line on the score scale when the score crosses zero.
  if (score_lo < 0.0 && score_hi > 0.0) {
    const double y = map_y_score(0.0);
    svg += "  <line class=\"zero-line\" x1=\"" + fmt(kLeft) + "\" y1=\"" +
           fmt(y) + "\" x2=\"" + fmt(kLeft + kPlotW) + "\" y2=\"" + fmt(y) +
           "\" stroke=\"#999999\" stroke-width=\"1\" "
           "stroke-dasharray=\"6,3\"/>\n";
  }

  svg += "  <rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
         fmt(kPlotW) + "\" height=\"" + fmt(kPlotH) +
         "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // Axis ticks and labels.
  svg +=
      "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double frac = i * 0.25;
    const double x = kLeft + frac * kPlotW;
    svg += "    <text x=\"" + fmt(x) + "\" y=\"" + fmt(kTop + kPlotH + 16) +
           "\" text-anchor=\"middle\">" + fmt(t0 + frac * t_span) +
           "</text>\n";
    svg += "    <text x=\"" + fmt(kLeft - 8) + "\" y=\"" +
           fmt(map_y_stock(frac) + 4) + "\" text-anchor=\"end\">" + fmt(frac) +
           "</text>\n";
  }
  for (const double v : {score_lo, 0.0, score_hi}) {
    if (v < score_lo || v > score_hi) {
      continue;
    }
    svg += "    <text x=\"" + fmt(kLeft + kPlotW + 8) + "\" y=\"" +
           fmt(map_y_score(v) + 4) + "\" text-anchor=\"start\">" + fmt(v) +
           "</text>\n";
  }
  svg += "    <text x=\"" + fmt(kLeft + kPlotW / 2) + "\" y=\"" +
         fmt(kHeight - 12) +
         "\" text-anchor=\"middle\">mission time (window units)</text>\n";
  svg += "  </g>\n";

  // Series. With a single sample there is nothing to connect, so emit
  // point markers instead of polylines.
  auto stock_value = [&](std::size_t series, std::size_t i) {
    const StockState& s = trajectory.states[i];
    switch (series) {
      case 0: return s.h;
      case 1: return s.a;
      case 2: return s.s;
      case 3: return s.t;
      case 4: return s.u;
      default: return s.c;
    }
  };

  if (n == 1) {
    for (std::size_t k = 0; k < 6; ++k) {
      svg += "  <circle cx=\"" + fmt(map_x(t0)) + "\" cy=\"" +
             fmt(map_y_stock(stock_value(k, 0))) + "\" r=\"3\" fill=\"" +
             kStockSeries[k].color + "\"/>\n";
    }
    svg += "  <circle cx=\"" + fmt(map_x(t0)) + "\" cy=\"" +
           fmt(map_y_score(trace.score[0])) + "\" r=\"3\" fill=\"" +
           std::string(kScoreSeries.color) + "\"/>\n";
  } else {
    for (std::size_t k = 0; k < 6; ++k) {
      svg += "  <polyline fill=\"none\" stroke=\"";
      svg += kStockSeries[k].color;
      svg += "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
          svg += ' ';
        }
        svg += fmt(map_x(trajectory.times[i])) + "," +
               fmt(map_y_stock(stock_value(k, i)));
      }
      svg += "\"/>\n";
    }
    svg += "  <polyline fill=\"none\" stroke=\"";
    svg += kScoreSeries.color;
    svg += "\" stroke-width=\"2\" stroke-dasharray=\"4,2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        svg += ' ';
      }
      svg += fmt(map_x(trajectory.times[i])) + "," +
             fmt(map_y_score(trace.score[i]));
    }
    svg += "\"/>\n";
  }

  // Legend across the top of the plot area.
  svg +=
      "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  double lx = kLeft;
  const double ly = kTop - 10.0;
  for (std::size_t k = 0; k < 7; ++k) {
    const SeriesDef& def = k < 6 ? kStockSeries[k] : kScoreSeries;
    svg += "    <line x1=\"" + fmt(lx) + "\" y1=\"" + fmt(ly - 4) +
           "\" x2=\"" + fmt(lx + 18) + "\" y2=\"" + fmt(ly - 4) +
           "\" stroke=\"" + def.color + "\" stroke-width=\"2\"/>\n";
    svg += "    <text x=\"" + fmt(lx + 22) + "\" y=\"" + fmt(ly) + "\">" +
           def.name + "</text>\n";
    lx += 40.0 + 7.0 * static_cast<double>(std::string(def.name).size());
  }
  svg += "  </g>\n";

  svg += "</svg>\n";
  return svg;
}

}  // namespace colearn

#include "mrfcd/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "mrfcd/error.hpp"

namespace mrfcd {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 60;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  require(!spec.series.empty(), "plot needs at least one series");
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  std::size_t points = 0;
  for (const auto& s : spec.series) {
    require(s.x.size() == s.y.size(), "series x and y lengths differ");
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      xlo = std::min(xlo, s.x[k]);
      xhi = std::max(xhi, s.x[k]);
      ylo = std::min(ylo, s.y[k]);
      yhi = std::max(yhi, s.y[k]);
      ++points;
    }
  }
  require(points > 0, "plot has no finite points");
  const Range xr = padded(xlo, xhi), yr = padded(ylo, yhi);
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h; };

  std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
         "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(spec.title) +
         "</text>\n";
  svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) + "\" height=\"" +
         num(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xr.lo + (xr.hi - xr.lo) * k / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * k / 4.0;
    svg += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(sx(xv)) + "\" y2=\"" +
           num(kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
           tick_label(xv) + "</text>\n";
    svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
           num(sy(yv)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy(yv) + 4) + "\" text-anchor=\"end\">" + tick_label(yv) +
           "</text>\n";
  }
  svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 15) + "\" text-anchor=\"middle\">" +
         escape(spec.x_label) + "</text>\n";
  svg += "<text x=\"18\" y=\"" + num(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
         num(kTop + plot_h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";

  double legend_y = kTop + 14;
  for (const auto& s : spec.series) {
    svg += "<g class=\"series\" data-label=\"" + escape(s.label) + "\">\n";
    std::string path;
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      path += (path.empty() ? "M" : " L") + num(sx(s.x[k])) + " " + num(sy(s.y[k]));
    }
    svg += "<path d=\"" + path + "\" fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      svg += "<circle class=\"marker\" cx=\"" + num(sx(s.x[k])) + "\" cy=\"" + num(sy(s.y[k])) + "\" r=\"3\" fill=\"" +
             s.color + "\"/>\n";
    }
    svg += "</g>\n";
    svg += "<line x1=\"" + num(kWidth - kRight - 150) + "\" y1=\"" + num(legend_y - 4) + "\" x2=\"" +
           num(kWidth - kRight - 130) + "\" y2=\"" + num(legend_y - 4) + "\" stroke=\"" + s.color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(kWidth - kRight - 125) + "\" y=\"" + num(legend_y) + "\">" + escape(s.label) + "</text>\n";
    legend_y += 16;
  }
  svg += "</svg>\n";
  return svg;
}

std::string risk_plot_svg(const std::vector<RiskReport>& reports) {
  require(!reports.empty(), "plot needs at least one report");
  PlotSeries risk{"empirical optimal risk", {}, {}, "#1f77b4", false};
  PlotSeries bound{"theoretical lower bound", {}, {}, "#d62728", true};
  for (const auto& r : reports) {
    risk.x.push_back(static_cast<double>(r.n));
    risk.y.push_back(r.risk);
    bound.x.push_back(static_cast<double>(r.n));
    bound.y.push_back(r.lower_bound);
  }
  PlotSpec spec{"Change-detection risk (" + to_string(reports.front().kind) + ")", "n (samples per dataset)",
                "risk (type I + type II error)", {risk}};
  if (std::any_of(bound.y.begin(), bound.y.end(), [](double v) { return std::isfinite(v); }))
    spec.series.push_back(bound);
  return render_svg(spec);
}

std::string bound_plot_svg(const std::vector<BoundReport>& reports) {
  require(!reports.empty(), "plot needs at least one report");
  struct Axis {
    std::string name;
    std::function<double(const BoundReport&)> get;
  };
  const std::vector<Axis> axes{
      {"p (nodes)", [](const BoundReport& r) { return static_cast<double>(r.params.p); }},
      {"d (max degree)", [](const BoundReport& r) { return static_cast<double>(r.params.d); }},
      {"alpha (edge weight)", [](const BoundReport& r) { return r.params.alpha; }},
      {"beta (edge weight)", [](const BoundReport& r) { return r.params.beta; }},
      {"gamma (normalized edge weight)", [](const BoundReport& r) { return r.params.gamma; }},
      {"delta (reliability level)", [](const BoundReport& r) { return r.delta; }},
  };
  const Axis* chosen = &axes.front();
  for (const auto& axis : axes) {
    const double first = axis.get(reports.front());
    if (std::any_of(reports.begin(), reports.end(), [&](const BoundReport& r) { return axis.get(r) != first; })) {
      chosen = &axis;
      break;
    }
  }
  PlotSeries series{"sample-size threshold", {}, {}, "#2ca02c", false};
  for (const auto& r : reports) {
    series.x.push_back(chosen->get(r));
    series.y.push_back(r.n_threshold);
  }
  return render_svg({"Necessary sample size (" + to_string(reports.front().kind) + ")", chosen->name,
                     "n threshold (samples)", {series}});
}

}  // namespace mrfcd

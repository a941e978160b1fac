#pragma once

#include <string>
#include <vector>

#include "mrfcd/lecam.hpp"
#include "mrfcd/risk.hpp"

namespace mrfcd {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
  bool dashed = false;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
};

/// Self-contained SVG line/marker chart. Non-finite points are skipped.
/// Output depends only on the input, so equal input gives identical bytes.
std::string render_svg(const PlotSpec& spec);

/// Empirical optimal risk vs n with the theoretical lower bound overlaid
/// when any report carries one.
std::string risk_plot_svg(const std::vector<RiskReport>& reports);

/// Threshold n vs the parameter that varies across the reports (p, d,
/// alpha, beta, gamma or delta; p if none varies).
std::string bound_plot_svg(const std::vector<BoundReport>& reports);

}  // namespace mrfcd

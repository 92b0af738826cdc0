// SPDX-License-Identifier: Apache-2.0
#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "destwalk/errors.hpp"

namespace destwalk::plot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 520.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

double transform(double v, bool log_axis) {
  return log_axis ? std::log10(v) : v;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

void write_svg(const std::filesystem::path& path, const Axes& axes,
               const std::vector<Series>& series) {
  // Collect transformed points and the plot range.
  std::vector<std::vector<std::pair<double, double>>> data;
  Range rx, ry;
  bool first = true;
  for (const auto& s : series) {
    auto& out = data.emplace_back();
    for (const auto& [x, y] : s.points) {
      if ((axes.log_x && !(x > 0.0)) || (axes.log_y && !(y > 0.0))) continue;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      const double tx = transform(x, axes.log_x);
      const double ty = transform(y, axes.log_y);
      if (first) {
        rx = {tx, tx};
        ry = {ty, ty};
        first = false;
      } else {
        rx.lo = std::min(rx.lo, tx);
        rx.hi = std::max(rx.hi, tx);
        ry.lo = std::min(ry.lo, ty);
        ry.hi = std::max(ry.hi, ty);
      }
      out.emplace_back(tx, ty);
    }
  }
  if (first) throw Error("write_svg: nothing to plot");
  if (rx.hi - rx.lo < 1e-12) rx.hi = rx.lo + 1.0;
  if (ry.hi - ry.lo < 1e-12) ry.hi = ry.lo + 1.0;
  const double pad_x = 0.04 * (rx.hi - rx.lo);
  const double pad_y = 0.06 * (ry.hi - ry.lo);
  rx.lo -= pad_x;
  rx.hi += pad_x;
  ry.lo -= pad_y;
  ry.hi += pad_y;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double tx) {
    return kMarginLeft + plot_w * (tx - rx.lo) / (rx.hi - rx.lo);
  };
  const auto py = [&](double ty) {
    return kMarginTop + plot_h * (ry.hi - ty) / (ry.hi - ry.lo);
  };

  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << plot_w << "\" height=\"" << plot_h
      << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << axes.title
      << "</text>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << axes.x_label << "</text>\n";
  out << "<text x=\"18\" y=\"" << kHeight / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 18 "
      << kHeight / 2 << ")\">" << axes.y_label << "</text>\n";

  // Ticks: integer decades on log axes, five even ticks otherwise.
  const auto draw_x_tick = [&](double tv, const std::string& label) {
    const double x = px(tv);
    out << "<line x1=\"" << x << "\" y1=\"" << kMarginTop + plot_h
        << "\" x2=\"" << x << "\" y2=\"" << kMarginTop + plot_h + 5
        << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << kMarginTop + plot_h + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << label << "</text>\n";
  };
  const auto draw_y_tick = [&](double tv, const std::string& label) {
    const double y = py(tv);
    out << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << y << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << y << "\" stroke=\"#333\"/>\n";
    out << "<text x=\"" << kMarginLeft - 9 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << label << "</text>\n";
  };
  if (axes.log_x) {
    for (int d = static_cast<int>(std::ceil(rx.lo));
         d <= static_cast<int>(std::floor(rx.hi)); ++d) {
      draw_x_tick(d, "1e" + std::to_string(d));
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double tv = rx.lo + (rx.hi - rx.lo) * i / 4.0;
      draw_x_tick(tv, fmt(tv));
    }
  }
  if (axes.log_y) {
    for (int d = static_cast<int>(std::ceil(ry.lo));
         d <= static_cast<int>(std::floor(ry.hi)); ++d) {
      draw_y_tick(d, "1e" + std::to_string(d));
    }
  } else {
    for (int i = 0; i <= 4; ++i) {
      const double tv = ry.lo + (ry.hi - ry.lo) * i / 4.0;
      draw_y_tick(tv, fmt(tv));
    }
  }

  for (std::size_t s = 0; s < data.size(); ++s) {
    if (data[s].empty()) continue;
    const char* color = kPalette[s % (sizeof kPalette / sizeof *kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.2\" points=\"";
    for (const auto& [tx, ty] : data[s]) {
      out << px(tx) << ',' << py(ty) << ' ';
    }
    out << "\"/>\n";
    out << "<text x=\"" << kMarginLeft + plot_w - 8 << "\" y=\""
        << kMarginTop + 16 + 16 * static_cast<double>(s)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"12\" fill=\""
        << color << "\">" << series[s].label << "</text>\n";
  }

  if (axes.reference_slope && !data[0].empty()) {
    auto mid = data[0][data[0].size() / 2];
    const double slope = *axes.reference_slope;
    const double x0 = rx.lo + 0.05 * (rx.hi - rx.lo);
    const double x1 = rx.hi - 0.05 * (rx.hi - rx.lo);
    const double y0 = mid.second + slope * (x0 - mid.first);
    const double y1 = mid.second + slope * (x1 - mid.first);
    out << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\""
        << px(x1) << "\" y2=\"" << py(y1)
        << "\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n";
    out << "<text x=\"" << px(x1) << "\" y=\"" << py(y1) - 6
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\" fill=\"#888\">slope "
        << fmt(slope) << "</text>\n";
  }

  out << "</svg>\n";
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace destwalk::plot

// SPDX-License-Identifier: Apache-2.0
#include "destwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace destwalk {

namespace {

std::size_t bin_count(double lo, double hi, double width) {
  // Labels lie strictly below hi; the 1e-9 slack absorbs division fuzz.
  return static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-9));
}

}  // namespace

std::uint64_t OccupancyGrid::in_grid_total() const {
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  return total;
}

RankPlot rank_plot(std::vector<double> lengths) {
  if (lengths.empty()) throw InsufficientDataError("rank_plot: empty input");
  for (double l : lengths) {
    if (!(l > 0.0)) {
      throw OutOfSupportError("rank_plot: lengths must be positive");
    }
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  RankPlot plot;
  plot.points.resize(lengths.size());
  std::size_t i = 0;
  while (i < lengths.size()) {
    std::size_t j = i;
    while (j + 1 < lengths.size() && lengths[j + 1] == lengths[i]) ++j;
    const auto tied_rank = static_cast<std::uint64_t>(j + 1);
    for (std::size_t k = i; k <= j; ++k) {
      plot.points[k] = RankPoint{lengths[k], tied_rank};
    }
    i = j + 1;
  }
  return plot;
}

TailFit fit_tail(const std::vector<double>& lengths, double l_lo, double l_hi) {
  if (!(l_lo > 0.0) || !(l_hi > l_lo)) {
    throw ConfigError("fit window requires 0 < l_lo < l_hi");
  }
  const RankPlot plot = rank_plot(lengths);

  std::vector<double> log_l;
  std::vector<double> log_rank;
  double tail_log_sum = 0.0;  // sum ln(l / l_lo) over lengths >= l_lo
  std::size_t tail_n = 0;
  for (const auto& p : plot.points) {
    if (p.length >= l_lo) {
      tail_log_sum += std::log(p.length / l_lo);
      ++tail_n;
    }
    if (p.length >= l_lo && p.length <= l_hi) {
      log_l.push_back(std::log(p.length));
      log_rank.push_back(std::log(static_cast<double>(p.rank)));
    }
  }
  if (log_l.size() < kMinTailPoints) {
    throw InsufficientDataError(
        "fit_tail: " + std::to_string(log_l.size()) +
        " points in window, need >= " + std::to_string(kMinTailPoints));
  }
  if (!(tail_log_sum > 0.0)) {
    throw DegenerateSeriesError("fit_tail: all tail lengths equal l_lo");
  }

  const LineFit line = fit_line(log_l, log_rank);
  TailFit fit;
  fit.slope = line.slope;
  fit.mu_mle = 1.0 + static_cast<double>(tail_n) / tail_log_sum;
  fit.l_lo = l_lo;
  fit.l_hi = l_hi;
  fit.n_points = log_l.size();
  fit.r_squared = line.r_squared;
  return fit;
}

double pearson(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x.size(), y.size());
  if (x.size() < 3) {
    throw InsufficientDataError("pearson: need at least 3 points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) {
    throw DegenerateSeriesError("pearson: series has zero variance");
  }
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

double lag_log_correlation(std::span<const double> series, std::size_t lag) {
  if (series.size() <= lag + 2) {
    throw InsufficientDataError("lag_log_correlation: series too short");
  }
  std::vector<double> logs(series.size());
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!(series[i] > 0.0)) {
      throw OutOfSupportError(
          "lag_log_correlation: series values must be positive");
    }
    logs[i] = std::log(series[i]);
  }
  const std::size_t m = logs.size() - lag;
  return pearson(std::span<const double>(logs.data(), m),
                 std::span<const double>(logs.data() + lag, m));
}

RadialHistogram radial_occupancy_from_norms(std::span<const double> norms,
                                            double delta_r0, double r_min,
                                            double r_max) {
  if (!(delta_r0 > 0.0)) throw ConfigError("delta_r0 must be > 0");
  if (!(r_min >= delta_r0)) throw ConfigError("r_min must be >= delta_r0");
  if (!(r_max > r_min)) throw ConfigError("r_max must be > r_min");

  RadialHistogram hist;
  hist.delta_r0 = delta_r0;
  hist.r_min = r_min;
  hist.r_max = r_max;
  hist.counts.assign(bin_count(r_min, r_max, delta_r0), 0);
  hist.total_positions = norms.size();
  for (double rho : norms) {
    // Shell k covers [label(k) - delta, label(k)).
    const double offset = std::floor((rho - r_min) / delta_r0) + 1.0;
    if (offset < 0.0 || offset >= static_cast<double>(hist.counts.size())) {
      continue;
    }
    ++hist.counts[static_cast<std::size_t>(offset)];
  }
  hist.probability.resize(hist.counts.size());
  const double total = hist.total_positions > 0
                           ? static_cast<double>(hist.total_positions)
                           : 1.0;
  for (std::size_t k = 0; k < hist.counts.size(); ++k) {
    hist.probability[k] = static_cast<double>(hist.counts[k]) / total;
  }
  return hist;
}

RadialHistogram radial_occupancy(const std::vector<VectorN>& positions,
                                 double delta_r0, double r_min, double r_max) {
  std::vector<double> norms(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    norms[i] = norm(positions[i]);
  }
  return radial_occupancy_from_norms(norms, delta_r0, r_min, r_max);
}

OccupancyGrid occupancy_grid(const std::vector<VectorN>& positions,
                             double cell, double lo, double hi) {
  if (!(cell > 0.0)) throw ConfigError("cell must be > 0");
  if (!(hi > lo)) throw ConfigError("extent requires hi > lo");

  OccupancyGrid grid;
  grid.cell = cell;
  grid.lo = lo;
  grid.hi = hi;
  grid.cells_per_axis = bin_count(lo, hi, cell);
  grid.counts.assign(grid.cells_per_axis * grid.cells_per_axis, 0);
  const double cells = static_cast<double>(grid.cells_per_axis);
  for (const auto& p : positions) {
    if (p.size() != 2) {
      throw DimensionError("occupancy_grid: positions must be 2-dimensional");
    }
    const double fx = std::floor((p[0] - lo) / cell);
    const double fy = std::floor((p[1] - lo) / cell);
    if (fx < 0.0 || fx >= cells || fy < 0.0 || fy >= cells) {
      ++grid.overflow;
      continue;
    }
    ++grid.counts[static_cast<std::size_t>(fx) * grid.cells_per_axis +
                  static_cast<std::size_t>(fy)];
  }
  return grid;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  require_same_dimension(x.size(), y.size());
  if (x.size() < 2) throw InsufficientDataError("fit_line: need >= 2 points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) {
    throw DegenerateSeriesError("fit_line: x values are all equal");
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InsufficientDataError("ks_statistic: empty sample");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    const double hi = (static_cast<double>(i) + 1.0) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    worst = std::max({worst, hi, lo});
  }
  return worst;
}

}  // namespace destwalk

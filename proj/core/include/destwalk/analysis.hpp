// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "destwalk/vec.hpp"

namespace destwalk {

struct RankPoint {
  double length;
  std::uint64_t rank;  // number of lengths >= this one; ties share it
};

// Lengths in descending order; an unnormalized complementary CDF.
struct RankPlot {
  std::vector<RankPoint> points;
};

// Power-tail fit over a length window.
struct TailFit {
  double slope;        // least-squares slope of log rank vs log length
  double mu_mle;       // 1 + n / sum ln(l_i / l_lo), over lengths >= l_lo
  double l_lo;
  double l_hi;
  std::size_t n_points;  // points inside [l_lo, l_hi]
  double r_squared;
};

// Occupancy probability per radial shell. Bin k covers
// [label(k) - delta_r0, label(k)) with label(k) = r_min + k * delta_r0.
struct RadialHistogram {
  double delta_r0 = 0.0;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<std::uint64_t> counts;
  std::vector<double> probability;  // counts / total_positions
  std::uint64_t total_positions = 0;

  std::size_t bins() const { return counts.size(); }
  double label(std::size_t k) const { return r_min + delta_r0 * static_cast<double>(k); }
};

// Square-cell occupancy counts over a 2D extent. Positions outside the
// extent are tallied in overflow, not dropped silently.
struct OccupancyGrid {
  double cell = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t cells_per_axis = 0;
  std::vector<std::uint64_t> counts;  // row-major, [ix * cells_per_axis + iy]
  std::uint64_t overflow = 0;

  std::uint64_t in_grid_total() const;
  double center(std::size_t index) const {
    return lo + cell * (static_cast<double>(index) + 0.5);
  }
};

struct LineFit {
  double slope;
  double intercept;
  double r_squared;
};

// Minimum in-window points for a valid tail fit.
inline constexpr std::size_t kMinTailPoints = 50;

// Ranks lengths in descending order; rank of a value is the number of
// lengths greater than or equal to it.
RankPlot rank_plot(std::vector<double> lengths);

// Least squares on (log l, log rank) restricted to [l_lo, l_hi], plus the
// maximum-likelihood tail exponent over lengths >= l_lo.
TailFit fit_tail(const std::vector<double>& lengths, double l_lo, double l_hi);

// Product-moment correlation coefficient; requires nonzero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// pearson(log series[0..n-lag), log series[lag..n)). Series must be
// strictly positive.
double lag_log_correlation(std::span<const double> series, std::size_t lag = 1);

RadialHistogram radial_occupancy(const std::vector<VectorN>& positions,
                                 double delta_r0, double r_min, double r_max);

// Same histogram computed directly from position norms.
RadialHistogram radial_occupancy_from_norms(std::span<const double> norms,
                                            double delta_r0, double r_min,
                                            double r_max);

OccupancyGrid occupancy_grid(const std::vector<VectorN>& positions,
                             double cell, double lo, double hi);

// Ordinary least squares of y on x.
LineFit fit_line(std::span<const double> x, std::span<const double> y);

// One-sample Kolmogorov-Smirnov statistic against a reference CDF.
double ks_statistic(std::vector<double> samples,
                    const std::function<double(double)>& cdf);

}  // namespace destwalk

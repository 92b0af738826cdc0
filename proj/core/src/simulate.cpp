// SPDX-License-Identifier: Apache-2.0
#include "destwalk/simulate.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "destwalk/frame.hpp"

namespace destwalk {

namespace {

constexpr double kAtDestinationRadius = 1e-15;
constexpr int kMaxFrameRetries = 100;

}  // namespace

void WalkConfig::validate() const {
  if (n == 0) throw ConfigError("n must be >= 1");
  step.validate();
  destination.validate(n);
  if (steps < 1) throw ConfigError("steps must be >= 1");
  if (burn_in < 0 || burn_in >= steps) {
    throw ConfigError("burn_in must satisfy 0 <= burn_in < steps");
  }
  if (!initial_position.empty() && initial_position.size() != n) {
    throw ConfigError("initial_position dimension must match n");
  }
}

std::uint64_t derive_replica_seed(std::uint64_t master_seed,
                                  std::uint64_t replica_index) {
  return mix64(master_seed + (replica_index + 1) * kGolden);
}

Trajectory run_walk(const WalkConfig& config) {
  config.validate();
  Rng rng(config.master_seed);

  const std::size_t n = config.n;
  const double alpha = config.step.alpha;
  const double gamma = config.step.gamma;
  const double l_max = config.step.l_max;

  VectorN x = config.initial_position.empty() ? VectorN(n, 0.0)
                                              : config.initial_position;
  Trajectory traj;
  traj.config = config;
  traj.records.reserve(static_cast<std::size_t>(config.steps));

  VectorN rvec(n);
  for (std::int64_t t = 1; t <= config.steps; ++t) {
    VectorN dest = draw_destination(config.destination, x, rng);
    for (std::size_t i = 0; i < n; ++i) rvec[i] = dest[i] - x[i];
    const double r = norm(rvec);

    if (r < kAtDestinationRadius) {
      traj.records.push_back(
          StepRecord{t, x, std::move(dest), r, 0.0, norm(x), 0.0});
      continue;
    }

    Frame frame = random_frame(n, rng);
    const SimplexWeights beta = sample_beta(n, config.beta_mode, rng);
    VectorN dx_prime;
    for (int attempt = 0;; ++attempt) {
      try {
        const VectorN r_prime = frame_to(frame, rvec);
        const EtaWeights eta = eta_weights(beta, r_prime, gamma);
        dx_prime = raw_step(r_prime, eta, alpha);
        break;
      } catch (const SingularComponentError&) {
        if (attempt + 1 >= kMaxFrameRetries) {
          throw Error("run_walk: singular frame at step " + std::to_string(t) +
                      " after " + std::to_string(kMaxFrameRetries) +
                      " resamples");
        }
        frame = random_frame(n, rng);
      }
    }

    const double l_pre = norm(dx_prime);
    const VectorN dx = frame_from(frame, clip_step(std::move(dx_prime), l_max));
    const double l_taken = norm(dx);
    // When nothing was clipped, record the taken length verbatim so that
    // l_raw == l holds exactly for unclipped steps.
    const double l_raw = l_pre > l_max ? l_pre : l_taken;
    for (std::size_t i = 0; i < n; ++i) x[i] += dx[i];
    traj.records.push_back(
        StepRecord{t, x, std::move(dest), r, l_taken, norm(x), l_raw});
  }
  return traj;
}

namespace {

struct RadialAccumulator {
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const RadialSpec& spec, double rho) {
    ++total;
    const double offset =
        std::floor((rho - spec.r_min) / spec.delta_r0) + 1.0;
    if (offset < 0.0 || offset >= static_cast<double>(counts.size())) return;
    ++counts[static_cast<std::size_t>(offset)];
  }
};

struct GridAccumulator {
  std::size_t cells = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t overflow = 0;

  void add(const GridSpec& spec, const VectorN& p) {
    const double fx = std::floor((p[0] - spec.lo) / spec.cell);
    const double fy = std::floor((p[1] - spec.lo) / spec.cell);
    const double c = static_cast<double>(cells);
    if (fx < 0.0 || fx >= c || fy < 0.0 || fy >= c) {
      ++overflow;
      return;
    }
    ++counts[static_cast<std::size_t>(fx) * cells +
             static_cast<std::size_t>(fy)];
  }
};

std::size_t span_bins(double lo, double hi, double width) {
  return static_cast<std::size_t>(std::ceil((hi - lo) / width - 1e-9));
}

}  // namespace

ReplicaAggregate run_replicas(const WalkConfig& config, std::size_t n_replicas,
                              const AggregateOptions& options) {
  if (n_replicas < 1) throw ConfigError("n_replicas must be >= 1");
  config.validate();
  if (options.grid && config.n != 2) {
    throw DimensionError("grid aggregation requires n == 2");
  }

  const std::int64_t kept = config.steps - config.burn_in;
  const auto kept_sz = static_cast<std::size_t>(kept);

  ReplicaAggregate agg;
  agg.n_replicas = n_replicas;
  agg.kept_per_replica = kept;
  if (options.pool_lengths) agg.lengths.resize(kept_sz * n_replicas);
  if (options.pool_r0) agg.r0.resize(kept_sz * n_replicas);

  const std::size_t radial_bins =
      options.radial ? span_bins(options.radial->r_min, options.radial->r_max,
                                 options.radial->delta_r0)
                     : 0;
  const std::size_t grid_cells =
      options.grid ? span_bins(options.grid->lo, options.grid->hi,
                               options.grid->cell)
                   : 0;

  RadialAccumulator radial_total;
  radial_total.counts.assign(radial_bins, 0);
  GridAccumulator grid_total;
  grid_total.cells = grid_cells;
  grid_total.counts.assign(grid_cells * grid_cells, 0);

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  if (threads > n_replicas) threads = static_cast<unsigned>(n_replicas);

  std::atomic<std::size_t> next{0};
  std::mutex merge_mutex;
  std::vector<std::string> failures(n_replicas);

  auto worker = [&]() {
    // Count accumulators are merged under the mutex; integer addition
    // commutes, so the merge order cannot change the result.
    RadialAccumulator radial_local;
    radial_local.counts.assign(radial_bins, 0);
    GridAccumulator grid_local;
    grid_local.cells = grid_cells;
    grid_local.counts.assign(grid_cells * grid_cells, 0);

    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= n_replicas) break;
      try {
        WalkConfig replica_config = config;
        replica_config.master_seed =
            derive_replica_seed(config.master_seed, k);
        const Trajectory traj = run_walk(replica_config);
        const std::size_t base = k * kept_sz;
        for (std::size_t i = 0; i < kept_sz; ++i) {
          const StepRecord& rec =
              traj.records[static_cast<std::size_t>(config.burn_in) + i];
          if (options.pool_lengths) agg.lengths[base + i] = rec.l;
          if (options.pool_r0) agg.r0[base + i] = rec.r0;
          if (options.radial) radial_local.add(*options.radial, rec.r0);
          if (options.grid) grid_local.add(*options.grid, rec.position);
        }
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }

    if (options.radial || options.grid) {
      const std::lock_guard<std::mutex> lock(merge_mutex);
      for (std::size_t b = 0; b < radial_local.counts.size(); ++b) {
        radial_total.counts[b] += radial_local.counts[b];
      }
      radial_total.total += radial_local.total;
      for (std::size_t c = 0; c < grid_local.counts.size(); ++c) {
        grid_total.counts[c] += grid_local.counts[c];
      }
      grid_total.overflow += grid_local.overflow;
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t k = 0; k < n_replicas; ++k) {
    if (!failures[k].empty()) {
      throw Error("replica " + std::to_string(k) + " failed: " + failures[k]);
    }
  }

  if (options.radial) {
    RadialHistogram hist;
    hist.delta_r0 = options.radial->delta_r0;
    hist.r_min = options.radial->r_min;
    hist.r_max = options.radial->r_max;
    hist.counts = std::move(radial_total.counts);
    hist.total_positions = radial_total.total;
    hist.probability.resize(hist.counts.size());
    const double total = hist.total_positions > 0
                             ? static_cast<double>(hist.total_positions)
                             : 1.0;
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
      hist.probability[b] = static_cast<double>(hist.counts[b]) / total;
    }
    agg.radial = std::move(hist);
  }
  if (options.grid) {
    OccupancyGrid grid;
    grid.cell = options.grid->cell;
    grid.lo = options.grid->lo;
    grid.hi = options.grid->hi;
    grid.cells_per_axis = grid_cells;
    grid.counts = std::move(grid_total.counts);
    grid.overflow = grid_total.overflow;
    agg.grid = std::move(grid);
  }
  return agg;
}

}  // namespace destwalk

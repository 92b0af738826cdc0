// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "destwalk/analysis.hpp"
#include "destwalk/destination.hpp"
#include "destwalk/step.hpp"
#include "destwalk/vec.hpp"

namespace destwalk {

// Full parameterization of one run. Defaults: 2 dimensions, gamma 0,
// alpha 1e-3, l_max 10, relative destinations with lambda 1000 (sigma 1e-3
// for fixed mode), 200000 steps with the first 100000 excluded from
// distributional analyses, start at the origin.
struct WalkConfig {
  std::size_t n = 2;
  StepParams step;
  DestinationSpec destination;
  BetaMode beta_mode = BetaMode::kUniformSimplex;
  std::int64_t steps = 200000;
  std::int64_t burn_in = 100000;
  std::uint64_t master_seed = 1;
  VectorN initial_position;  // empty means origin
  bool record_preclip = false;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// One step of a trajectory. position is the location after the step; r is
// the distance to the drawn destination before it; l the displacement
// actually taken (capped); l_raw the displacement before capping; r0 the
// distance from position to the origin.
struct StepRecord {
  std::int64_t t;
  VectorN position;
  VectorN destination;
  double r;
  double l;
  double r0;
  double l_raw;
};

struct Trajectory {
  WalkConfig config;
  std::vector<StepRecord> records;
};

// Stream seed for a replica: splitmix64 advanced replica_index + 1 steps
// from the master seed. Injective in the index for a fixed master.
std::uint64_t derive_replica_seed(std::uint64_t master_seed,
                                  std::uint64_t replica_index);

// Runs one walk. Per step the draw order is fixed: destination, then frame,
// then beta. A frame whose components trip the singularity guard is
// resampled (up to 100 times, then the run aborts); beta is kept. A step
// whose difference norm is below 1e-15 records zero displacement and draws
// neither frame nor beta. Identical config and seed give an identical
// trajectory.
Trajectory run_walk(const WalkConfig& config);

struct GridSpec {
  double cell = 0.02;
  double lo = -10.0;
  double hi = 10.0;
};

struct RadialSpec {
  double delta_r0 = 0.01;
  double r_min = 0.01;
  double r_max = 10.0;
};

struct AggregateOptions {
  bool pool_lengths = true;
  bool pool_r0 = true;
  std::optional<GridSpec> grid;      // requires n == 2
  std::optional<RadialSpec> radial;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Post-burn-in statistics pooled over replicas, in replica order.
struct ReplicaAggregate {
  std::size_t n_replicas = 0;
  std::int64_t kept_per_replica = 0;  // steps - burn_in
  std::vector<double> lengths;
  std::vector<double> r0;
  std::optional<OccupancyGrid> grid;
  std::optional<RadialHistogram> radial;
};

// Runs n_replicas walks on derived seeds (replica k uses
// derive_replica_seed(master_seed, k)) and pools records with t > burn_in.
// Replicas execute concurrently; results are assembled in replica order and
// count merges commute, so the aggregate does not depend on the thread
// count. Any replica failure aborts the whole run with the replica index in
// the message.
ReplicaAggregate run_replicas(const WalkConfig& config, std::size_t n_replicas,
                              const AggregateOptions& options = {});

}  // namespace destwalk

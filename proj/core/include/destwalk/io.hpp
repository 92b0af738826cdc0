// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "destwalk/analysis.hpp"
#include "destwalk/simulate.hpp"

namespace destwalk {

// A run configuration plus run-level settings that live beside it in config
// files and manifests.
struct RunSettings {
  WalkConfig config;
  std::size_t replicas = 1;
  unsigned threads = 0;
};

// Doubles are written with 17 significant digits throughout, enough to
// round-trip exactly.
std::string format_double(double v);

// Trajectory CSV. Header: t,x1..xN,d1..dN,r,l,r0 and, when the config asks
// for pre-clip lengths, a trailing l_raw column. One row per step.
void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& trajectory);

struct TrajectoryData {
  std::size_t n = 0;
  bool has_preclip = false;
  std::vector<StepRecord> records;
};

// Parses a trajectory CSV; malformed rows raise Error naming the line.
TrajectoryData read_trajectory_csv(const std::filesystem::path& path);

void write_rank_csv(const std::filesystem::path& path, const RankPlot& plot);
void write_fit_csv(const std::filesystem::path& path, const TailFit& fit);
void write_radial_csv(const std::filesystem::path& path,
                      const RadialHistogram& hist);
// Grid cells with zero counts are omitted; coordinates are cell centers.
void write_grid_csv(const std::filesystem::path& path,
                    const OccupancyGrid& grid);
void write_metrics_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& metrics);

// Line-based "key = value" settings text. Blank lines and lines starting
// with '#' are ignored. Unknown keys raise ConfigError naming the key.
// Keys: n, alpha, gamma, l_max, destination_mode (sim1-relative|sim2-fixed),
// lambda, sigma, anchor, beta_mode (uniform-simplex|one-hot), steps,
// burn_in, master_seed, initial_position, record_preclip, replicas, threads.
void apply_setting(RunSettings& settings, const std::string& key,
                   const std::string& value);
RunSettings read_settings_file(const std::filesystem::path& path);

// Serializes settings in the same key = value form, preceded by '#'
// comment lines; the result is itself a valid settings file.
void write_manifest(const std::filesystem::path& path,
                    const RunSettings& settings,
                    const std::vector<std::string>& comments);

std::string beta_mode_name(BetaMode mode);
std::string destination_mode_name(DestinationMode mode);

}  // namespace destwalk

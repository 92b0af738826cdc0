// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <cstdio>
#include <string>

#include "destwalk/io.hpp"
#include "doctest.h"

using namespace destwalk;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "destwalk_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("format_double round trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678901234567, -0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("trajectory csv round trips exactly") {
  WalkConfig config;
  config.steps = 50;
  config.burn_in = 10;
  config.master_seed = 5;
  config.record_preclip = true;
  const Trajectory traj = run_walk(config);
  const fs::path path = temp_dir() / "traj.csv";
  write_trajectory_csv(path, traj);
  const TrajectoryData data = read_trajectory_csv(path);
  CHECK(data.n == 2);
  CHECK(data.has_preclip);
  REQUIRE(data.records.size() == traj.records.size());
  for (std::size_t i = 0; i < data.records.size(); ++i) {
    CHECK(data.records[i].t == traj.records[i].t);
    CHECK(data.records[i].position == traj.records[i].position);
    CHECK(data.records[i].destination == traj.records[i].destination);
    CHECK(data.records[i].r == traj.records[i].r);
    CHECK(data.records[i].l == traj.records[i].l);
    CHECK(data.records[i].r0 == traj.records[i].r0);
    CHECK(data.records[i].l_raw == traj.records[i].l_raw);
  }
}

TEST_CASE("trajectory csv header matches the contract") {
  WalkConfig config;
  config.steps = 2;
  config.burn_in = 0;
  config.n = 3;
  const Trajectory traj = run_walk(config);
  const fs::path path = temp_dir() / "traj3.csv";
  write_trajectory_csv(path, traj);
  const std::string content = slurp(path);
  CHECK(content.rfind("t,x1,x2,x3,d1,d2,d3,r,l,r0\n", 0) == 0);
}

TEST_CASE("reading an empty trajectory reports no records") {
  const fs::path path = temp_dir() / "empty.csv";
  std::ofstream(path) << "";
  CHECK_THROWS_WITH_AS(read_trajectory_csv(path),
                       doctest::Contains("no records"), Error);
  std::ofstream(path) << "t,x1,x2,d1,d2,r,l,r0\n";
  CHECK_THROWS_WITH_AS(read_trajectory_csv(path),
                       doctest::Contains("no records"), Error);
}

TEST_CASE("malformed trajectory rows name the line") {
  const fs::path path = temp_dir() / "bad.csv";
  std::ofstream(path) << "t,x1,x2,d1,d2,r,l,r0\n"
                      << "1,0,0,0,0,1,1,0\n"
                      << "2,0,0,oops,0,1,1,0\n";
  CHECK_THROWS_WITH_AS(read_trajectory_csv(path), doctest::Contains("line 3"),
                       Error);
  std::ofstream(path) << "t,x1,x2,d1,d2,r,l,r0\n"
                      << "1,0,0,0,0,1,1\n";
  CHECK_THROWS_WITH_AS(read_trajectory_csv(path), doctest::Contains("line 2"),
                       Error);
}

TEST_CASE("settings file round trips through the manifest writer") {
  RunSettings settings;
  settings.config.n = 3;
  settings.config.step.gamma = -0.25;
  settings.config.step.alpha = 0.002;
  settings.config.destination.mode = DestinationMode::kFixed;
  settings.config.destination.anchor = {1.0, 2.0, 3.0};
  settings.config.beta_mode = BetaMode::kOneHot;
  settings.config.steps = 1234;
  settings.config.burn_in = 17;
  settings.config.master_seed = 0xDEADBEEFULL;
  settings.config.initial_position = {0.5, 0.0, -0.5};
  settings.config.record_preclip = true;
  settings.replicas = 7;
  settings.threads = 2;

  const fs::path path = temp_dir() / "manifest.txt";
  write_manifest(path, settings, {"destwalk test manifest"});
  const RunSettings back = read_settings_file(path);
  CHECK(back.config.n == 3);
  CHECK(back.config.step.gamma == -0.25);
  CHECK(back.config.step.alpha == 0.002);
  CHECK(back.config.destination.mode == DestinationMode::kFixed);
  CHECK(back.config.destination.anchor == VectorN{1.0, 2.0, 3.0});
  CHECK(back.config.beta_mode == BetaMode::kOneHot);
  CHECK(back.config.steps == 1234);
  CHECK(back.config.burn_in == 17);
  CHECK(back.config.master_seed == 0xDEADBEEFULL);
  CHECK(back.config.initial_position == VectorN{0.5, 0.0, -0.5});
  CHECK(back.config.record_preclip);
  CHECK(back.replicas == 7);
  CHECK(back.threads == 2);
}

TEST_CASE("unknown settings keys are named") {
  const fs::path path = temp_dir() / "bad_settings.txt";
  std::ofstream(path) << "gamma = 0.5\nwibble = 3\n";
  CHECK_THROWS_WITH_AS(read_settings_file(path),
                       doctest::Contains("unknown key: wibble"), ConfigError);
  std::ofstream(path) << "gamma = not_a_number\n";
  CHECK_THROWS_AS(read_settings_file(path), ConfigError);
}

TEST_CASE("analysis csv emitters") {
  const fs::path dir = temp_dir();

  const RankPlot plot = rank_plot({1.0, 2.0, 4.0});
  write_rank_csv(dir / "rank.csv", plot);
  CHECK(slurp(dir / "rank.csv") == "l,rank\n4,1\n2,2\n1,3\n");

  TailFit fit;
  fit.slope = -1.0;
  fit.mu_mle = 2.0;
  fit.l_lo = 0.01;
  fit.l_hi = 10.0;
  fit.n_points = 64;
  fit.r_squared = 0.99;
  write_fit_csv(dir / "fit.csv", fit);
  CHECK(slurp(dir / "fit.csv") ==
        "slope,mu_mle,l_lo,l_hi,n,r2\n-1,2,0.01,10,64,0.98999999999999999\n");

  write_metrics_csv(dir / "metrics.csv", {{"pearson_log_r0_log_l", 0.5}});
  CHECK(slurp(dir / "metrics.csv") ==
        "metric,value\npearson_log_r0_log_l,0.5\n");

  // Grid centers and shell labels carry binary representation noise, so
  // compare those CSVs by value rather than by byte.
  const OccupancyGrid grid =
      occupancy_grid({VectorN{0.005, 0.005}}, 0.02, -10.0, 10.0);
  write_grid_csv(dir / "grid.csv", grid);
  {
    std::ifstream in(dir / "grid.csv");
    std::string header, row;
    REQUIRE(std::getline(in, header));
    CHECK(header == "x1,x2,count");
    REQUIRE(std::getline(in, row));
    double x1 = 0, x2 = 0;
    int count = 0;
    REQUIRE(std::sscanf(row.c_str(), "%lf,%lf,%d", &x1, &x2, &count) == 3);
    CHECK(x1 == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(x2 == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(count == 1);
    CHECK_FALSE(std::getline(in, row));
  }

  const RadialHistogram hist = radial_occupancy(
      {VectorN{0.0, 0.015}}, 0.01, 0.01, 0.05);
  write_radial_csv(dir / "radial.csv", hist);
  {
    std::ifstream in(dir / "radial.csv");
    std::string header, row;
    REQUIRE(std::getline(in, header));
    CHECK(header == "r0,probability");
    const double expected_p[] = {0.0, 1.0, 0.0, 0.0};
    for (int k = 0; k < 4; ++k) {
      REQUIRE(std::getline(in, row));
      double r0 = 0, p = 0;
      REQUIRE(std::sscanf(row.c_str(), "%lf,%lf", &r0, &p) == 2);
      CHECK(r0 == doctest::Approx(0.01 * (k + 1)).epsilon(1e-9));
      CHECK(p == expected_p[k]);
    }
    CHECK_FALSE(std::getline(in, row));
  }
}

// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command line tool, run as subprocesses.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const char* kCli = DESTWALK_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "destwalk_cli_log.txt";
  const std::string cmd =
      std::string(kCli) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::string output{std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>()};
  return RunResult{WEXITSTATUS(status), std::move(output)};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "destwalk_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("simulate writes the requested number of rows") {
  const fs::path dir = fresh_dir("simulate_rows");
  const RunResult r = run_cli("simulate --steps 2000 --burn-in 100 --seed 42 "
                              "--gamma 0 --sim 1 --out " + dir.string());
  CHECK(r.exit_code == 0);
  const std::string csv = slurp(dir / "trajectory_r0000.csv");
  CHECK(line_count(csv) == 2001);  // header + rows
  CHECK(csv.rfind("t,x1,x2,d1,d2,r,l,r0\n", 0) == 0);
  CHECK(fs::exists(dir / "run_manifest.txt"));
}

TEST_CASE("simulate rejects out-of-range gamma with a named message") {
  const fs::path dir = fresh_dir("simulate_badgamma");
  const RunResult r = run_cli("simulate --gamma 2.0 --out " + dir.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("gamma must be in [-1,1]") != std::string::npos);
}

TEST_CASE("simulate is deterministic across reruns and thread settings") {
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  const std::string args = "simulate --steps 1500 --burn-in 0 --seed 7 "
                           "--replicas 2 ";
  CHECK(run_cli(args + "--threads 1 --out " + a.string()).exit_code == 0);
  CHECK(run_cli(args + "--threads 4 --out " + b.string()).exit_code == 0);
  for (const char* name : {"trajectory_r0000.csv", "trajectory_r0001.csv"}) {
    const std::string fa = slurp(a / name);
    CHECK(!fa.empty());
    CHECK(fa == slurp(b / name));
  }
}

TEST_CASE("simulate reruns from its own manifest") {
  const fs::path a = fresh_dir("manifest_a");
  const fs::path b = fresh_dir("manifest_b");
  CHECK(run_cli("simulate --steps 800 --burn-in 0 --seed 11 --sim 2 "
                "--gamma -0.5 --beta onehot --out " + a.string())
            .exit_code == 0);
  CHECK(run_cli("simulate --config " + (a / "run_manifest.txt").string() +
                " --out " + b.string())
            .exit_code == 0);
  CHECK(slurp(a / "trajectory_r0000.csv") == slurp(b / "trajectory_r0000.csv"));
}

TEST_CASE("analyze produces the requested reports") {
  const fs::path sim = fresh_dir("analyze_sim");
  CHECK(run_cli("simulate --steps 4000 --burn-in 1000 --seed 3 --sim 2 "
                "--out " + sim.string()).exit_code == 0);
  const fs::path out = fresh_dir("analyze_out");
  const RunResult r = run_cli("analyze " + sim.string() +
                              " --rank --corr --radial --grid --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out / "rank.csv"));
  CHECK(fs::exists(out / "correlations.csv"));
  CHECK(fs::exists(out / "radial.csv"));
  CHECK(fs::exists(out / "grid.csv"));
  CHECK(fs::exists(out / "analyze_manifest.txt"));
  const std::string corr = slurp(out / "correlations.csv");
  CHECK(corr.rfind("metric,value\n", 0) == 0);
  CHECK(corr.find("pearson_log_r0_log_l") != std::string::npos);
}

TEST_CASE("analyze fit on a heavy-tailed run reports a slope near -1") {
  const fs::path sim = fresh_dir("fit_sim");
  CHECK(run_cli("simulate --steps 200000 --burn-in 100000 --seed 5 --sim 2 "
                "--gamma 0 --out " + sim.string()).exit_code == 0);
  const fs::path out = fresh_dir("fit_out");
  const RunResult r = run_cli("analyze " + sim.string() + " --fit --out " +
                              out.string());
  CHECK(r.exit_code == 0);
  std::ifstream fit(out / "fit.csv");
  std::string header, row;
  REQUIRE(std::getline(fit, header));
  CHECK(header == "slope,mu_mle,l_lo,l_hi,n,r2");
  REQUIRE(std::getline(fit, row));
  const double slope = std::stod(row.substr(0, row.find(',')));
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.25));
}

TEST_CASE("analyze of an empty file reports no records") {
  const fs::path dir = fresh_dir("analyze_empty");
  std::ofstream(dir / "empty.csv") << "";
  const RunResult r = run_cli("analyze " + (dir / "empty.csv").string() +
                              " --rank --out " + dir.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("no records") != std::string::npos);
}

TEST_CASE("analyze names the malformed row") {
  const fs::path dir = fresh_dir("analyze_malformed");
  std::ofstream(dir / "bad.csv") << "t,x1,x2,d1,d2,r,l,r0\n"
                                 << "1,0,0,0,0,1,0.1,0\n"
                                 << "2,0,0,0,0,bad,0.1,0\n";
  const RunResult r = run_cli("analyze " + (dir / "bad.csv").string() +
                              " --rank --out " + dir.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("line 3") != std::string::npos);
}

TEST_CASE("reproduce rejects unknown figures with the valid list") {
  const fs::path dir = fresh_dir("reproduce_bad");
  const RunResult r = run_cli("reproduce fig9 --out " + dir.string());
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("fig3") != std::string::npos);
  CHECK(r.output.find("fig4") != std::string::npos);
  CHECK(r.output.find("fig5") != std::string::npos);
  CHECK(r.output.find("fig6") != std::string::npos);
}

TEST_CASE("reproduce fig5 emits the grid and the four radial curves") {
  const fs::path dir = fresh_dir("reproduce_fig5");
  const RunResult r =
      run_cli("reproduce fig5 --scale desk --seed 5 --out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "fig5a_grid.csv"));
  const std::string radial = slurp(dir / "fig5b_radial.csv");
  CHECK(radial.rfind("gamma,r0,probability\n", 0) == 0);
  for (const char* tag : {"\n-0.08,", "\n-0.04,", "\n0,", "\n0.13,"}) {
    CHECK(radial.find(tag) != std::string::npos);
  }
}

TEST_CASE("reproduce fig6 sweeps twenty-one gamma values") {
  const fs::path dir = fresh_dir("reproduce_fig6");
  const RunResult r =
      run_cli("reproduce fig6 --scale desk --seed 6 --out " + dir.string());
  CHECK(r.exit_code == 0);
  for (const char* name :
       {"fig6a_r0_series.csv", "fig6b_l_series.csv", "fig6c_r0_vs_l.csv",
        "fig6d_l_vs_lnext.csv", "fig6_correlations.csv"}) {
    CHECK(fs::exists(dir / name));
  }
  const std::string sweep = slurp(dir / "fig6e_gamma_sweep.csv");
  CHECK(line_count(sweep) == 22);  // header + one row per gamma
  CHECK(sweep.rfind("gamma,corr_sim1,corr_sim2\n", 0) == 0);
  CHECK(sweep.find("\n-1,") != std::string::npos);
  CHECK(sweep.find("\n1,") != std::string::npos);
}

TEST_CASE("reproduce fig3 emits the per-panel files") {
  const fs::path dir = fresh_dir("reproduce_fig3");
  const RunResult r = run_cli("reproduce fig3 --scale desk --seed 3 --svg "
                              "--out " + dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(dir / "fig3a_trajectory.csv"));
  CHECK(fs::exists(dir / "fig3b_trajectory.csv"));
  CHECK(fs::exists(dir / "fig3c_trajectory.csv"));
  CHECK(fs::exists(dir / "fig3d_rank.csv"));
  CHECK(fs::exists(dir / "fig3d_rank.svg"));
  CHECK(fs::exists(dir / "reproduce_manifest.txt"));
  const std::string rank = slurp(dir / "fig3d_rank.csv");
  CHECK(rank.rfind("gamma,l,rank\n", 0) == 0);
  CHECK(rank.find("\n-1,") != std::string::npos);
}

// SPDX-License-Identifier: Apache-2.0
//
// destwalk command line tool: seeded walk simulation, trajectory analysis,
// and the built-in figure recipes. Data goes to CSV files; diagnostics to
// stderr; exit code 0 only on success.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "destwalk/analysis.hpp"
#include "destwalk/io.hpp"
#include "destwalk/simulate.hpp"
#include "destwalk/version.hpp"
#include "svg_plot.hpp"

namespace fs = std::filesystem;
using namespace destwalk;

namespace {

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string join_args(int argc, char** argv) {
  std::string cmd;
  for (int i = 0; i < argc; ++i) {
    if (i) cmd += ' ';
    cmd += argv[i];
  }
  return cmd;
}

std::string replica_file_name(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "trajectory_r%04zu.csv", k);
  return buf;
}

std::string gamma_tag(double gamma) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", gamma);
  return buf;
}

// Carries the raw values of the shared simulation flags; only flags the
// user actually passed override the config file.
struct SimFlags {
  std::string config_file;
  std::uint64_t seed = 1;
  double gamma = 0.0;
  double alpha = 1e-3;
  double lmax = 10.0;
  double lambda = 1000.0;
  double sigma = 1e-3;
  int sim = 1;
  std::int64_t steps = 200000;
  std::int64_t burn_in = 100000;
  std::size_t n = 2;
  std::size_t replicas = 1;
  unsigned threads = 0;
  std::string beta = "simplex";
  std::vector<double> anchor;
  std::vector<double> init;
  bool record_preclip = false;
  std::string out = ".";
};

void add_sim_options(CLI::App* sub, SimFlags& f) {
  sub->add_option("--config", f.config_file,
                  "settings file (key = value); flags override it");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--gamma", f.gamma, "attractiveness exponent in [-1,1]");
  sub->add_option("--alpha", f.alpha, "change rate in (0,1]");
  sub->add_option("--lmax", f.lmax, "step cap");
  sub->add_option("--sim", f.sim, "destination protocol: 1 or 2");
  sub->add_option("--lambda", f.lambda, "protocol 1 distance rate");
  sub->add_option("--sigma", f.sigma, "protocol 2 error scale");
  sub->add_option("--steps", f.steps, "steps per replica");
  sub->add_option("--burn-in", f.burn_in, "steps excluded from analyses");
  sub->add_option("--replicas", f.replicas, "replica count");
  sub->add_option("--threads", f.threads, "worker threads (0 = hardware)");
  sub->add_option("--beta", f.beta, "allocation mode: simplex or onehot");
  sub->add_option("--n", f.n, "space dimension");
  sub->add_option("--anchor", f.anchor, "protocol 2 true destination")
      ->expected(-1);
  sub->add_option("--init", f.init, "initial position")->expected(-1);
  sub->add_flag("--record-preclip", f.record_preclip,
                "add the pre-cap length column to trajectory CSVs");
  sub->add_option("--out", f.out, "output directory");
}

RunSettings resolve_settings(const CLI::App* sub, const SimFlags& f) {
  RunSettings s;
  if (!f.config_file.empty()) s = read_settings_file(f.config_file);
  if (sub->count("--seed")) s.config.master_seed = f.seed;
  if (sub->count("--gamma")) s.config.step.gamma = f.gamma;
  if (sub->count("--alpha")) s.config.step.alpha = f.alpha;
  if (sub->count("--lmax")) s.config.step.l_max = f.lmax;
  if (sub->count("--sim")) {
    if (f.sim == 1) {
      s.config.destination.mode = DestinationMode::kRelative;
    } else if (f.sim == 2) {
      s.config.destination.mode = DestinationMode::kFixed;
    } else {
      throw ConfigError("sim must be 1 or 2");
    }
  }
  if (sub->count("--lambda")) s.config.destination.lambda = f.lambda;
  if (sub->count("--sigma")) s.config.destination.sigma = f.sigma;
  if (sub->count("--steps")) s.config.steps = f.steps;
  if (sub->count("--burn-in")) s.config.burn_in = f.burn_in;
  if (sub->count("--replicas")) s.replicas = f.replicas;
  if (sub->count("--threads")) s.threads = f.threads;
  if (sub->count("--beta")) {
    if (f.beta == "simplex") {
      s.config.beta_mode = BetaMode::kUniformSimplex;
    } else if (f.beta == "onehot") {
      s.config.beta_mode = BetaMode::kOneHot;
    } else {
      throw ConfigError("beta must be simplex or onehot");
    }
  }
  if (sub->count("--n")) s.config.n = f.n;
  if (sub->count("--anchor")) s.config.destination.anchor = f.anchor;
  if (sub->count("--init")) s.config.initial_position = f.init;
  if (sub->count("--record-preclip")) s.config.record_preclip = true;
  s.config.validate();
  if (s.replicas < 1) throw ConfigError("replicas must be >= 1");
  return s;
}

struct AnalyzeFlags {
  std::string input;
  bool rank = false;
  bool fit = false;
  bool corr = false;
  bool radial = false;
  bool grid = false;
  bool svg = false;
  double window_lo = 0.01;
  double window_hi = 10.0;
  std::size_t lag = 1;
  double delta_r0 = 0.01;
  double r_min = 0.01;
  double r_max = 10.0;
  double cell = 0.02;
  double extent_lo = -10.0;
  double extent_hi = 10.0;
  std::int64_t burn_in = -1;  // -1: manifest value, or 0 for bare files
  std::string out = ".";
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"destination-attractiveness walk simulator and analysis suite"};
  app.set_version_flag("--version", std::string("destwalk ") + kVersion);
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand(
      "simulate", "run replicas and write trajectory CSVs plus a manifest");
  SimFlags simf;
  add_sim_options(sim, simf);

  // analyze
  auto* ana = app.add_subcommand(
      "analyze", "compute reports from a trajectory CSV or run directory");
  AnalyzeFlags anaf;
  ana->add_option("input", anaf.input, "trajectory CSV or run directory")
      ->required();
  ana->add_flag("--rank", anaf.rank, "rank plot CSV");
  ana->add_flag("--fit", anaf.fit, "tail fit CSV");
  ana->add_flag("--corr", anaf.corr, "correlation metrics CSV");
  ana->add_flag("--radial", anaf.radial, "radial occupancy CSV");
  ana->add_flag("--grid", anaf.grid, "occupancy grid CSV (2D only)");
  ana->add_flag("--svg", anaf.svg, "also render SVG plots");
  ana->add_option("--window-lo", anaf.window_lo, "fit window lower edge");
  ana->add_option("--window-hi", anaf.window_hi, "fit window upper edge");
  ana->add_option("--lag", anaf.lag, "lag for the step-length correlation");
  ana->add_option("--delta-r0", anaf.delta_r0, "radial shell width");
  ana->add_option("--r-min", anaf.r_min, "radial range lower edge");
  ana->add_option("--r-max", anaf.r_max, "radial range upper edge");
  ana->add_option("--cell", anaf.cell, "grid cell side");
  ana->add_option("--extent-lo", anaf.extent_lo, "grid extent lower edge");
  ana->add_option("--extent-hi", anaf.extent_hi, "grid extent upper edge");
  ana->add_option("--burn-in", anaf.burn_in,
                  "override the burn-in applied before analysis");
  ana->add_option("--out", anaf.out, "output directory");

  // reproduce
  auto* rep = app.add_subcommand(
      "reproduce", "run a built-in figure recipe and emit per-panel CSVs");
  std::string figure;
  std::string scale = "desk";
  std::uint64_t rep_seed = 1;
  unsigned rep_threads = 0;
  bool rep_svg = false;
  std::string rep_out = ".";
  rep->add_option("figure", figure, "one of fig3, fig4, fig5, fig6")
      ->required();
  rep->add_option("--scale", scale, "desk or paper");
  rep->add_option("--seed", rep_seed, "master seed");
  rep->add_option("--threads", rep_threads, "worker threads (0 = hardware)");
  rep->add_flag("--svg", rep_svg, "also render SVG plots");
  rep->add_option("--out", rep_out, "output directory");

  CLI11_PARSE(app, argc, argv);
  const std::string command = join_args(argc, argv);

  try {
    if (sim->parsed()) {
      const RunSettings settings = resolve_settings(sim, simf);
      const fs::path out(simf.out);
      fs::create_directories(out);
      for (std::size_t k = 0; k < settings.replicas; ++k) {
        WalkConfig config = settings.config;
        config.master_seed =
            derive_replica_seed(settings.config.master_seed, k);
        write_trajectory_csv(out / replica_file_name(k), run_walk(config));
      }
      write_manifest(out / "run_manifest.txt", settings,
                     {std::string("destwalk ") + kVersion,
                      "created: " + timestamp_utc(), "command: " + command});
      std::cerr << "wrote " << settings.replicas << " trajectory file(s) to "
                << out.string() << '\n';
      return 0;
    }

    if (ana->parsed()) {
      if (!anaf.rank && !anaf.fit && !anaf.corr && !anaf.radial && !anaf.grid) {
        anaf.rank = anaf.fit = anaf.corr = anaf.radial = true;
      }
      const fs::path input(anaf.input);
      std::vector<fs::path> files;
      std::int64_t burn_in = anaf.burn_in;
      if (fs::is_directory(input)) {
        const RunSettings settings =
            read_settings_file(input / "run_manifest.txt");
        if (burn_in < 0) burn_in = settings.config.burn_in;
        for (const auto& entry : fs::directory_iterator(input)) {
          const std::string name = entry.path().filename().string();
          if (name.rfind("trajectory_r", 0) == 0 &&
              name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
            files.push_back(entry.path());
          }
        }
        std::sort(files.begin(), files.end());
        if (files.empty()) {
          throw Error(input.string() + ": no trajectory files");
        }
      } else {
        files.push_back(input);
        if (burn_in < 0) burn_in = 0;
      }

      std::vector<double> lengths;
      std::vector<double> r0;
      std::vector<VectorN> positions;
      double corr_r0_l_sum = 0.0;
      double corr_lag_sum = 0.0;
      std::size_t corr_series = 0;
      std::size_t dim = 0;
      for (const auto& file : files) {
        const TrajectoryData data = read_trajectory_csv(file);
        dim = data.n;
        if (static_cast<std::size_t>(burn_in) >= data.records.size()) {
          throw ConfigError("burn_in >= record count in " + file.string());
        }
        std::vector<double> file_l, file_r0;
        for (std::size_t i = static_cast<std::size_t>(burn_in);
             i < data.records.size(); ++i) {
          const StepRecord& rec = data.records[i];
          file_l.push_back(rec.l);
          file_r0.push_back(rec.r0);
          if (anaf.grid) positions.push_back(rec.position);
        }
        if (anaf.corr) {
          // Correlations are per trajectory; directories report the mean
          // across replicas.
          std::vector<double> log_l(file_l.size()), log_r0(file_r0.size());
          for (std::size_t i = 0; i < file_l.size(); ++i) {
            if (!(file_l[i] > 0.0) || !(file_r0[i] > 0.0)) {
              throw OutOfSupportError(
                  "correlations need positive l and r0 series");
            }
            log_l[i] = std::log(file_l[i]);
            log_r0[i] = std::log(file_r0[i]);
          }
          corr_r0_l_sum += pearson(log_r0, log_l);
          corr_lag_sum += lag_log_correlation(file_l, anaf.lag);
          ++corr_series;
        }
        lengths.insert(lengths.end(), file_l.begin(), file_l.end());
        r0.insert(r0.end(), file_r0.begin(), file_r0.end());
      }

      const fs::path out(anaf.out);
      fs::create_directories(out);

      if (anaf.rank || anaf.fit) {
        const RankPlot plot = rank_plot(lengths);
        if (anaf.rank) write_rank_csv(out / "rank.csv", plot);
        if (anaf.fit) {
          const TailFit fit = fit_tail(lengths, anaf.window_lo, anaf.window_hi);
          write_fit_csv(out / "fit.csv", fit);
          if (anaf.svg && anaf.rank) {
            plot::Series series{"step lengths", {}};
            const std::size_t stride =
                std::max<std::size_t>(1, plot.points.size() / 2000);
            for (std::size_t i = 0; i < plot.points.size(); i += stride) {
              series.points.emplace_back(
                  plot.points[i].length,
                  static_cast<double>(plot.points[i].rank));
            }
            plot::Axes axes;
            axes.title = "step length rank plot";
            axes.x_label = "l";
            axes.y_label = "rank";
            axes.log_x = axes.log_y = true;
            axes.reference_slope = fit.slope;
            plot::write_svg(out / "rank.svg", axes, {series});
          }
        }
      }
      if (anaf.corr) {
        write_metrics_csv(
            out / "correlations.csv",
            {{"pearson_log_r0_log_l",
              corr_r0_l_sum / static_cast<double>(corr_series)},
             {"lag" + std::to_string(anaf.lag) + "_log_l",
              corr_lag_sum / static_cast<double>(corr_series)},
             {"series", static_cast<double>(corr_series)}});
      }
      if (anaf.radial) {
        const RadialHistogram hist = radial_occupancy_from_norms(
            r0, anaf.delta_r0, anaf.r_min, anaf.r_max);
        write_radial_csv(out / "radial.csv", hist);
        if (anaf.svg) {
          plot::Series series{"occupancy", {}};
          for (std::size_t k = 0; k < hist.bins(); ++k) {
            if (hist.counts[k] > 0) {
              series.points.emplace_back(hist.label(k), hist.probability[k]);
            }
          }
          plot::Axes axes;
          axes.title = "radial occupancy";
          axes.x_label = "r0";
          axes.y_label = "probability";
          axes.log_x = axes.log_y = true;
          axes.reference_slope = -1.0;
          plot::write_svg(out / "radial.svg", axes, {series});
        }
      }
      if (anaf.grid) {
        if (dim != 2) {
          throw DimensionError("grid analysis requires 2D trajectories");
        }
        write_grid_csv(out / "grid.csv",
                       occupancy_grid(positions, anaf.cell, anaf.extent_lo,
                                      anaf.extent_hi));
      }

      std::ofstream manifest(out / "analyze_manifest.txt");
      manifest << "# destwalk " << kVersion << '\n'
               << "# created: " << timestamp_utc() << '\n'
               << "# command: " << command << '\n'
               << "# input: " << anaf.input << '\n'
               << "# burn_in: " << burn_in << '\n'
               << "# window: [" << format_double(anaf.window_lo) << ", "
               << format_double(anaf.window_hi) << "]\n";
      std::cerr << "analysis written to " << out.string() << '\n';
      return 0;
    }

    if (rep->parsed()) {
      const bool paper_scale = [&] {
        if (scale == "desk") return false;
        if (scale == "paper") return true;
        throw ConfigError("scale must be desk or paper");
      }();
      const fs::path out(rep_out);
      fs::create_directories(out);

      const auto base_config = [&](double gamma, DestinationMode mode,
                                   std::uint64_t run_index) {
        WalkConfig config;
        config.step.gamma = gamma;
        config.destination.mode = mode;
        config.master_seed = derive_replica_seed(rep_seed, run_index);
        return config;
      };

      const auto write_figure_manifest = [&](std::size_t replicas) {
        std::ofstream m(out / "reproduce_manifest.txt");
        m << "# destwalk " << kVersion << '\n'
          << "# created: " << timestamp_utc() << '\n'
          << "# command: " << command << '\n'
          << "figure = " << figure << '\n'
          << "scale = " << scale << '\n'
          << "seed = " << rep_seed << '\n'
          << "replicas_per_panel = " << replicas << '\n';
      };

      if (figure == "fig3" || figure == "fig4") {
        const DestinationMode mode = figure == "fig3"
                                         ? DestinationMode::kRelative
                                         : DestinationMode::kFixed;
        const double gammas[] = {-1.0, 0.0, 1.0};
        const char panels[] = {'a', 'b', 'c'};
        std::ofstream rank_csv(out / (figure + "d_rank.csv"));
        rank_csv << "gamma,l,rank\n";
        std::vector<plot::Series> rank_series;
        for (int i = 0; i < 3; ++i) {
          const WalkConfig config =
              base_config(gammas[i], mode, static_cast<std::uint64_t>(i));
          const Trajectory traj = run_walk(config);
          write_trajectory_csv(
              out / (figure + std::string(1, panels[i]) + "_trajectory.csv"),
              traj);
          std::vector<double> lengths;
          for (std::size_t r = static_cast<std::size_t>(config.burn_in);
               r < traj.records.size(); ++r) {
            lengths.push_back(traj.records[r].l);
          }
          const RankPlot plot = rank_plot(lengths);
          auto& series = rank_series.emplace_back();
          series.label = "gamma " + gamma_tag(gammas[i]);
          const std::size_t stride =
              std::max<std::size_t>(1, plot.points.size() / 2000);
          for (std::size_t p = 0; p < plot.points.size(); ++p) {
            rank_csv << gamma_tag(gammas[i]) << ','
                     << format_double(plot.points[p].length) << ','
                     << plot.points[p].rank << '\n';
            if (p % stride == 0) {
              series.points.emplace_back(
                  plot.points[p].length,
                  static_cast<double>(plot.points[p].rank));
            }
          }
        }
        if (rep_svg) {
          plot::Axes axes;
          axes.title = figure + "(d) step length rank plots";
          axes.x_label = "l";
          axes.y_label = "rank";
          axes.log_x = axes.log_y = true;
          axes.reference_slope = -1.0;
          plot::write_svg(out / (figure + "d_rank.svg"), axes, rank_series);
        }
        write_figure_manifest(1);
      } else if (figure == "fig5") {
        const std::size_t replicas = paper_scale ? 1000 : 20;
        const double gammas[] = {-0.08, -0.04, 0.0, 0.13};
        std::ofstream radial_csv(out / "fig5b_radial.csv");
        radial_csv << "gamma,r0,probability\n";
        std::vector<plot::Series> radial_series;
        for (int i = 0; i < 4; ++i) {
          const WalkConfig config =
              base_config(gammas[i], DestinationMode::kFixed,
                          static_cast<std::uint64_t>(i));
          AggregateOptions options;
          options.pool_lengths = false;
          options.pool_r0 = false;
          options.radial = RadialSpec{};
          options.threads = rep_threads;
          if (gammas[i] == 0.0) options.grid = GridSpec{};
          const ReplicaAggregate agg =
              run_replicas(config, replicas, options);
          auto& series = radial_series.emplace_back();
          series.label = "gamma " + gamma_tag(gammas[i]);
          for (std::size_t k = 0; k < agg.radial->bins(); ++k) {
            radial_csv << gamma_tag(gammas[i]) << ','
                       << format_double(agg.radial->label(k)) << ','
                       << format_double(agg.radial->probability[k]) << '\n';
            if (agg.radial->counts[k] > 0) {
              series.points.emplace_back(agg.radial->label(k),
                                         agg.radial->probability[k]);
            }
          }
          if (agg.grid) {
            write_grid_csv(out / "fig5a_grid.csv", *agg.grid);
          }
        }
        if (rep_svg) {
          plot::Axes axes;
          axes.title = "fig5(b) radial occupancy";
          axes.x_label = "r0";
          axes.y_label = "probability";
          axes.log_x = axes.log_y = true;
          axes.reference_slope = -1.0;
          plot::write_svg(out / "fig5b_radial.svg", axes, radial_series);
        }
        write_figure_manifest(replicas);
      } else if (figure == "fig6") {
        // Panels a-d: one protocol-2 run at gamma 0 over the analysis window.
        const WalkConfig config =
            base_config(0.0, DestinationMode::kFixed, 0);
        const Trajectory traj = run_walk(config);
        std::ofstream a_csv(out / "fig6a_r0_series.csv");
        std::ofstream b_csv(out / "fig6b_l_series.csv");
        std::ofstream c_csv(out / "fig6c_r0_vs_l.csv");
        std::ofstream d_csv(out / "fig6d_l_vs_lnext.csv");
        a_csv << "t,r0\n";
        b_csv << "t,l\n";
        c_csv << "r0,l\n";
        d_csv << "l,l_next\n";
        std::vector<double> log_l, log_r0;
        for (std::size_t i = static_cast<std::size_t>(config.burn_in);
             i < traj.records.size(); ++i) {
          const StepRecord& rec = traj.records[i];
          a_csv << rec.t << ',' << format_double(rec.r0) << '\n';
          b_csv << rec.t << ',' << format_double(rec.l) << '\n';
          c_csv << format_double(rec.r0) << ',' << format_double(rec.l) << '\n';
          if (i + 1 < traj.records.size()) {
            d_csv << format_double(rec.l) << ','
                  << format_double(traj.records[i + 1].l) << '\n';
          }
          log_l.push_back(std::log(rec.l));
          log_r0.push_back(std::log(rec.r0));
        }
        std::vector<double> kept_l(log_l.size());
        for (std::size_t i = 0; i < log_l.size(); ++i) {
          kept_l[i] = std::exp(log_l[i]);
        }
        write_metrics_csv(out / "fig6_correlations.csv",
                          {{"pearson_log_r0_log_l", pearson(log_r0, log_l)},
                           {"lag1_log_l", lag_log_correlation(kept_l, 1)}});

        // Panel e: lag-1 correlation across the gamma sweep, both protocols,
        // averaged over replicas.
        const std::size_t replicas = paper_scale ? 100 : 10;
        std::ofstream e_csv(out / "fig6e_gamma_sweep.csv");
        e_csv << "gamma,corr_sim1,corr_sim2\n";
        plot::Series sweep1{"protocol 1", {}};
        plot::Series sweep2{"protocol 2", {}};
        for (int k = -10; k <= 10; ++k) {
          const double gamma = static_cast<double>(k) / 10.0;
          double corr[2] = {0.0, 0.0};
          for (int proto = 0; proto < 2; ++proto) {
            const DestinationMode mode = proto == 0
                                             ? DestinationMode::kRelative
                                             : DestinationMode::kFixed;
            const WalkConfig sweep_config = base_config(
                gamma, mode,
                static_cast<std::uint64_t>(100 + (k + 10) * 2 + proto));
            AggregateOptions options;
            options.pool_r0 = false;
            options.threads = rep_threads;
            const ReplicaAggregate agg =
                run_replicas(sweep_config, replicas, options);
            const auto per = static_cast<std::size_t>(agg.kept_per_replica);
            double sum = 0.0;
            for (std::size_t rix = 0; rix < replicas; ++rix) {
              sum += lag_log_correlation(
                  std::span<const double>(agg.lengths.data() + rix * per, per),
                  1);
            }
            corr[proto] = sum / static_cast<double>(replicas);
          }
          e_csv << gamma_tag(gamma) << ',' << format_double(corr[0]) << ','
                << format_double(corr[1]) << '\n';
          sweep1.points.emplace_back(gamma, corr[0]);
          sweep2.points.emplace_back(gamma, corr[1]);
        }
        if (rep_svg) {
          plot::Axes axes;
          axes.title = "fig6(e) lag-1 step-length correlation";
          axes.x_label = "gamma";
          axes.y_label = "correlation";
          plot::write_svg(out / "fig6e_gamma_sweep.svg", axes,
                          {sweep1, sweep2});
        }
        write_figure_manifest(replicas);
      } else {
        throw ConfigError("unknown figure '" + figure +
                          "' (valid: fig3, fig4, fig5, fig6)");
      }
      std::cerr << figure << " data written to " << out.string() << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

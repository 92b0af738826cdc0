// SPDX-License-Identifier: Apache-2.0
#include "destwalk/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace destwalk {

namespace {

void trim(std::string& s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  std::size_t b = 0;
  while (b < s.size() && is_space(s[b])) ++b;
  std::size_t e = s.size();
  while (e > b && is_space(s[e - 1])) --e;
  s = s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& what) {
  std::string t = s;
  trim(t);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last || t.empty()) {
    throw Error(what + ": not a number: '" + s + "'");
  }
  return v;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::string t = s;
  trim(t);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw Error(what + ": not an integer: '" + s + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& s, const std::string& what) {
  std::string t = s;
  trim(t);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw Error(what + ": not an unsigned integer: '" + s + "'");
  }
  return v;
}

VectorN parse_vector(const std::string& s, const std::string& what) {
  VectorN v;
  for (const auto& part : split(s, ',')) {
    v.push_back(parse_double(part, what));
  }
  return v;
}

std::string format_vector(const VectorN& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(const std::filesystem::path& path,
                          const Trajectory& trajectory) {
  std::ofstream out = open_out(path);
  const std::size_t n = trajectory.config.n;
  out << 't';
  for (std::size_t i = 1; i <= n; ++i) out << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) out << ",d" << i;
  out << ",r,l,r0";
  if (trajectory.config.record_preclip) out << ",l_raw";
  out << '\n';
  std::string line;
  for (const auto& rec : trajectory.records) {
    line.clear();
    line += std::to_string(rec.t);
    for (double v : rec.position) {
      line += ',';
      line += format_double(v);
    }
    for (double v : rec.destination) {
      line += ',';
      line += format_double(v);
    }
    line += ',';
    line += format_double(rec.r);
    line += ',';
    line += format_double(rec.l);
    line += ',';
    line += format_double(rec.r0);
    if (trajectory.config.record_preclip) {
      line += ',';
      line += format_double(rec.l_raw);
    }
    out << line << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

TrajectoryData read_trajectory_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path.string());
  std::string line;
  if (!std::getline(in, line)) {
    throw Error(path.string() + ": no records");
  }
  trim(line);
  const auto header = split(line, ',');
  // Header is t,x1..xN,d1..dN,r,l,r0[,l_raw].
  TrajectoryData data;
  if (header.size() >= 6 && header[0] == "t") {
    std::size_t n = 0;
    while (1 + n < header.size() && header[1 + n] == "x" + std::to_string(n + 1)) {
      ++n;
    }
    const bool preclip = header.back() == "l_raw";
    const std::size_t expected = 1 + 2 * n + 3 + (preclip ? 1 : 0);
    if (n >= 1 && header.size() == expected) {
      data.n = n;
      data.has_preclip = preclip;
    }
  }
  if (data.n == 0) {
    throw Error(path.string() + ": line 1: unrecognized trajectory header");
  }

  const std::size_t fields = 1 + 2 * data.n + 3 + (data.has_preclip ? 1 : 0);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    trim(line);
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    const std::string where = path.string() + ": line " + std::to_string(line_no);
    if (parts.size() != fields) {
      throw Error(where + ": expected " + std::to_string(fields) +
                  " fields, got " + std::to_string(parts.size()));
    }
    StepRecord rec;
    rec.t = parse_int(parts[0], where);
    rec.position.resize(data.n);
    rec.destination.resize(data.n);
    for (std::size_t i = 0; i < data.n; ++i) {
      rec.position[i] = parse_double(parts[1 + i], where);
    }
    for (std::size_t i = 0; i < data.n; ++i) {
      rec.destination[i] = parse_double(parts[1 + data.n + i], where);
    }
    rec.r = parse_double(parts[1 + 2 * data.n], where);
    rec.l = parse_double(parts[2 + 2 * data.n], where);
    rec.r0 = parse_double(parts[3 + 2 * data.n], where);
    rec.l_raw = data.has_preclip ? parse_double(parts[4 + 2 * data.n], where)
                                 : rec.l;
    data.records.push_back(std::move(rec));
  }
  if (data.records.empty()) {
    throw Error(path.string() + ": no records");
  }
  return data;
}

void write_rank_csv(const std::filesystem::path& path, const RankPlot& plot) {
  std::ofstream out = open_out(path);
  out << "l,rank\n";
  for (const auto& p : plot.points) {
    out << format_double(p.length) << ',' << p.rank << '\n';
  }
}

void write_fit_csv(const std::filesystem::path& path, const TailFit& fit) {
  std::ofstream out = open_out(path);
  out << "slope,mu_mle,l_lo,l_hi,n,r2\n";
  out << format_double(fit.slope) << ',' << format_double(fit.mu_mle) << ','
      << format_double(fit.l_lo) << ',' << format_double(fit.l_hi) << ','
      << fit.n_points << ',' << format_double(fit.r_squared) << '\n';
}

void write_radial_csv(const std::filesystem::path& path,
                      const RadialHistogram& hist) {
  std::ofstream out = open_out(path);
  out << "r0,probability\n";
  for (std::size_t k = 0; k < hist.bins(); ++k) {
    out << format_double(hist.label(k)) << ','
        << format_double(hist.probability[k]) << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path,
                    const OccupancyGrid& grid) {
  std::ofstream out = open_out(path);
  out << "x1,x2,count\n";
  for (std::size_t ix = 0; ix < grid.cells_per_axis; ++ix) {
    for (std::size_t iy = 0; iy < grid.cells_per_axis; ++iy) {
      const std::uint64_t c = grid.counts[ix * grid.cells_per_axis + iy];
      if (c == 0) continue;
      out << format_double(grid.center(ix)) << ','
          << format_double(grid.center(iy)) << ',' << c << '\n';
    }
  }
}

void write_metrics_csv(
    const std::filesystem::path& path,
    const std::vector<std::pair<std::string, double>>& metrics) {
  std::ofstream out = open_out(path);
  out << "metric,value\n";
  for (const auto& [name, value] : metrics) {
    out << name << ',' << format_double(value) << '\n';
  }
}

std::string beta_mode_name(BetaMode mode) {
  return mode == BetaMode::kUniformSimplex ? "uniform-simplex" : "one-hot";
}

std::string destination_mode_name(DestinationMode mode) {
  return mode == DestinationMode::kRelative ? "sim1-relative" : "sim2-fixed";
}

void apply_setting(RunSettings& settings, const std::string& key,
                   const std::string& value) {
  WalkConfig& c = settings.config;
  if (key == "n") {
    const auto v = parse_int(value, key);
    if (v < 1) throw ConfigError("n must be >= 1");
    c.n = static_cast<std::size_t>(v);
  } else if (key == "alpha") {
    c.step.alpha = parse_double(value, key);
  } else if (key == "gamma") {
    c.step.gamma = parse_double(value, key);
  } else if (key == "l_max") {
    c.step.l_max = parse_double(value, key);
  } else if (key == "destination_mode") {
    if (value == "sim1-relative") {
      c.destination.mode = DestinationMode::kRelative;
    } else if (value == "sim2-fixed") {
      c.destination.mode = DestinationMode::kFixed;
    } else {
      throw ConfigError(
          "destination_mode must be sim1-relative or sim2-fixed");
    }
  } else if (key == "lambda") {
    c.destination.lambda = parse_double(value, key);
  } else if (key == "sigma") {
    c.destination.sigma = parse_double(value, key);
  } else if (key == "anchor") {
    c.destination.anchor = parse_vector(value, key);
  } else if (key == "beta_mode") {
    if (value == "uniform-simplex") {
      c.beta_mode = BetaMode::kUniformSimplex;
    } else if (value == "one-hot") {
      c.beta_mode = BetaMode::kOneHot;
    } else {
      throw ConfigError("beta_mode must be uniform-simplex or one-hot");
    }
  } else if (key == "steps") {
    c.steps = parse_int(value, key);
  } else if (key == "burn_in") {
    c.burn_in = parse_int(value, key);
  } else if (key == "master_seed") {
    c.master_seed = parse_uint(value, key);
  } else if (key == "initial_position") {
    c.initial_position = parse_vector(value, key);
  } else if (key == "record_preclip") {
    if (value == "true" || value == "1") {
      c.record_preclip = true;
    } else if (value == "false" || value == "0") {
      c.record_preclip = false;
    } else {
      throw ConfigError("record_preclip must be true or false");
    }
  } else if (key == "replicas") {
    const auto v = parse_int(value, key);
    if (v < 1) throw ConfigError("replicas must be >= 1");
    settings.replicas = static_cast<std::size_t>(v);
  } else if (key == "threads") {
    const auto v = parse_int(value, key);
    if (v < 0) throw ConfigError("threads must be >= 0");
    settings.threads = static_cast<unsigned>(v);
  } else {
    throw ConfigError("unknown key: " + key);
  }
}

RunSettings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path.string());
  RunSettings settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    trim(line);
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path.string() + ": line " + std::to_string(line_no) +
                        ": expected 'key = value'");
    }
    std::string key = line.substr(0, eq);
    std::string value = line.substr(eq + 1);
    trim(key);
    trim(value);
    try {
      apply_setting(settings, key, value);
    } catch (const Error& e) {
      throw ConfigError(path.string() + ": line " + std::to_string(line_no) +
                        ": " + e.what());
    }
  }
  return settings;
}

void write_manifest(const std::filesystem::path& path,
                    const RunSettings& settings,
                    const std::vector<std::string>& comments) {
  std::ofstream out = open_out(path);
  for (const auto& comment : comments) {
    out << "# " << comment << '\n';
  }
  const WalkConfig& c = settings.config;
  out << "n = " << c.n << '\n';
  out << "alpha = " << format_double(c.step.alpha) << '\n';
  out << "gamma = " << format_double(c.step.gamma) << '\n';
  out << "l_max = " << format_double(c.step.l_max) << '\n';
  out << "destination_mode = " << destination_mode_name(c.destination.mode)
      << '\n';
  out << "lambda = " << format_double(c.destination.lambda) << '\n';
  out << "sigma = " << format_double(c.destination.sigma) << '\n';
  if (!c.destination.anchor.empty()) {
    out << "anchor = " << format_vector(c.destination.anchor) << '\n';
  }
  out << "beta_mode = " << beta_mode_name(c.beta_mode) << '\n';
  out << "steps = " << c.steps << '\n';
  out << "burn_in = " << c.burn_in << '\n';
  out << "master_seed = " << c.master_seed << '\n';
  if (!c.initial_position.empty()) {
    out << "initial_position = " << format_vector(c.initial_position) << '\n';
  }
  out << "record_preclip = " << (c.record_preclip ? "true" : "false") << '\n';
  out << "replicas = " << settings.replicas << '\n';
  out << "threads = " << settings.threads << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace destwalk

#include "qcomp/harness.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qcomp/rng.hpp"
#include "qcomp/solver.hpp"

namespace qcomp {

std::string channel_name(ChannelKind c) {
  switch (c) {
    case ChannelKind::full: return "full";
    case ChannelKind::onebit: return "onebit";
    case ChannelKind::onebit_dither: return "onebit_dither";
  }
  return "full";
}

ChannelKind parse_channel(const std::string& name) {
  if (name == "full") return ChannelKind::full;
  if (name == "onebit") return ChannelKind::onebit;
  if (name == "onebit_dither") return ChannelKind::onebit_dither;
  throw std::invalid_argument("unknown channel: " + name);
}

InterpolationScheme parse_scheme(const std::string& name) {
  if (name == "none") return InterpolationScheme::none;
  if (name == "taylor1") return InterpolationScheme::taylor1;
  if (name == "taylor2") return InterpolationScheme::taylor2;
  throw std::invalid_argument("unknown scheme: " + name);
}

std::string cell_id(int k_targets, int m_samples, int n_bins,
                    InterpolationScheme scheme, ChannelKind channel) {
  std::ostringstream os;
  os << "k=" << k_targets << ";m=" << m_samples << ";n=" << n_bins
     << ";scheme=" << scheme_name(scheme) << ";channel=" << channel_name(channel);
  return os.str();
}

TrialOutcome run_trial_with_scene(const RadarConfig& radar, const Scene& scene,
                                  const InterpolatedDictionary& dict,
                                  ChannelKind kind, RngStream& rng) {
  const ComplexSignal y = synthesize(radar, scene);

  MeasurementChannel channel = MeasurementChannel::full_resolution();
  if (kind != ChannelKind::full) {
    const double delta = choose_delta(y);
    if (kind == ChannelKind::onebit) {
      channel = MeasurementChannel::one_bit(delta);
    } else {
      channel = MeasurementChannel::one_bit_dithered(
          delta, draw_dither(delta, radar.m_samples, rng));
    }
  }

  SolverProblem problem;
  problem.z = apply_channel(channel, y);
  problem.channel = channel;
  problem.dict = &dict;
  problem.k_targets = scene.k();

  auto [estimates, trace] = qcomp_solve(problem);

  const Pairing pairing = pair_estimates(estimates, scene.targets, radar);

  TrialOutcome outcome;
  outcome.errors = pairing.errors;
  outcome.assignment = pairing.assignment;
  outcome.misses.resize(outcome.errors.size());
  for (std::size_t i = 0; i < outcome.errors.size(); ++i) {
    outcome.misses[i] = outcome.errors[i] >= 1.0;
  }
  outcome.residue =
      residue_metric(problem.z, channel, trace.final_reconstruction);
  return outcome;
}

TrialOutcome run_trial(const RadarConfig& radar, int k_targets,
                       const InterpolatedDictionary& dict, ChannelKind kind,
                       std::uint64_t trial_seed) {
  RngStream rng(trial_seed);
  const Scene scene = sample_scene(radar, k_targets, rng);
  return run_trial_with_scene(radar, scene, dict, kind, rng);
}

namespace {

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.k_targets < 1) {
    throw std::invalid_argument("config: k_targets must be >= 1");
  }
  if (cfg.trials < 1) {
    throw std::invalid_argument("config: trials must be >= 1");
  }
  if (cfg.schemes.empty() || cfg.channels.empty() || cfg.densities.empty()) {
    throw std::invalid_argument(
        "config: schemes, channels and densities must be non-empty");
  }
  for (double rho : cfg.densities) {
    if (!(rho > 0.0)) {
      throw std::invalid_argument("config: densities must be positive");
    }
    if (std::lround(rho * cfg.radar.m_samples) < 1) {
      throw std::invalid_argument("config: density too small, n would be 0");
    }
  }
  if (cfg.workers < 0) {
    throw std::invalid_argument("config: workers must be >= 0");
  }
}

double steady_now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg,
                                 const SweepOptions& options) {
  validate_config(cfg);
  const auto now_ms =
      options.now_ms ? options.now_ms : std::function<double()>(steady_now_ms);
  const int workers =
      cfg.workers > 0 ? cfg.workers : omp_get_max_threads();
  const int m = cfg.radar.m_samples;

  // Dictionaries are shared read-only across all trials of a cell and
  // across cells with the same (n, scheme).
  std::map<std::pair<int, InterpolationScheme>,
           std::unique_ptr<InterpolatedDictionary>>
      dictionaries;
  auto dictionary_for = [&](int n_bins, InterpolationScheme scheme)
      -> const InterpolatedDictionary& {
    auto key = std::make_pair(n_bins, scheme);
    auto it = dictionaries.find(key);
    if (it == dictionaries.end()) {
      it = dictionaries
               .emplace(key, std::make_unique<InterpolatedDictionary>(
                                 cfg.radar, n_bins, scheme))
               .first;
    }
    return *it->second;
  };

  std::vector<ResultRow> rows;
  for (const InterpolationScheme scheme : cfg.schemes) {
    for (const ChannelKind channel : cfg.channels) {
      for (const double rho : cfg.densities) {
        const int n_bins = static_cast<int>(std::lround(rho * m));
        const InterpolatedDictionary& dict = dictionary_for(n_bins, scheme);
        const std::string cell =
            cell_id(cfg.k_targets, m, n_bins, scheme, channel);
        const std::uint64_t cell_hash = fnv1a64(cell);

        std::vector<TrialOutcome> outcomes(
            static_cast<std::size_t>(cfg.trials));
        std::string first_error;
        long first_error_trial = -1;

        const double t0 = now_ms();
#pragma omp parallel for schedule(static) num_threads(workers)
        for (long i = 0; i < cfg.trials; ++i) {
          try {
            const std::uint64_t seed = derive_trial_seed(
                cfg.master_seed, cell_hash, static_cast<std::uint64_t>(i));
            outcomes[static_cast<std::size_t>(i)] =
                run_trial(cfg.radar, cfg.k_targets, dict, channel, seed);
          } catch (const std::exception& e) {
#pragma omp critical
            {
              if (first_error_trial < 0 || i < first_error_trial) {
                first_error_trial = i;
                first_error = e.what();
              }
            }
          }
        }
        const double t1 = now_ms();

        if (first_error_trial >= 0) {
          throw std::runtime_error("cell " + cell + " failed at trial " +
                                   std::to_string(first_error_trial) + ": " +
                                   first_error);
        }

        const MetricsSummary summary = aggregate(outcomes);
        ResultRow row;
        row.scheme = scheme_name(scheme);
        row.channel = channel_name(channel);
        row.k = cfg.k_targets;
        row.m = m;
        row.n = n_bins;
        row.rho = rho;
        row.trials = cfg.trials;
        row.seed = cfg.master_seed;
        row.avg_error = summary.avg_error;
        row.miss_rate = summary.miss_rate;
        row.avg_hit_error = summary.avg_hit_error
                                ? *summary.avg_hit_error
                                : std::numeric_limits<double>::quiet_NaN();
        row.avg_residue = summary.avg_residue;
        row.wall_time_ms = t1 - t0;
        rows.push_back(row);

        if (options.progress != nullptr) {
          *options.progress << cell << " trials=" << cfg.trials
                            << " avg_error=" << row.avg_error
                            << " miss_rate=" << row.miss_rate << " ("
                            << row.wall_time_ms << " ms)\n";
        }
      }
    }
  }
  return rows;
}

namespace {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::string to_csv(std::span<const ResultRow> rows) {
  std::string out =
      "scheme,channel,k,m,n,rho,trials,seed,avg_error,miss_rate,"
      "avg_hit_error,avg_residue,wall_time_ms\n";
  for (const ResultRow& r : rows) {
    out += r.scheme;
    out += ',';
    out += r.channel;
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.m);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += format_number(r.rho);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += format_number(r.avg_error);
    out += ',';
    out += format_number(r.miss_rate);
    out += ',';
    out += format_number(r.avg_hit_error);
    out += ',';
    out += format_number(r.avg_residue);
    out += ',';
    out += format_number(r.wall_time_ms);
    out += '\n';
  }
  return out;
}

std::string to_json(std::span<const ResultRow> rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ResultRow& r : rows) {
    nlohmann::ordered_json o;
    o["scheme"] = r.scheme;
    o["channel"] = r.channel;
    o["k"] = r.k;
    o["m"] = r.m;
    o["n"] = r.n;
    o["rho"] = r.rho;
    o["trials"] = r.trials;
    o["seed"] = r.seed;
    o["avg_error"] = r.avg_error;
    o["miss_rate"] = r.miss_rate;
    if (std::isnan(r.avg_hit_error)) {
      o["avg_hit_error"] = nullptr;
    } else {
      o["avg_hit_error"] = r.avg_hit_error;
    }
    o["avg_residue"] = r.avg_residue;
    o["wall_time_ms"] = r.wall_time_ms;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::vector<ResultRow> rows;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("parse_csv: empty input");
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 13) {
      throw std::invalid_argument("parse_csv: malformed row: " + line);
    }
    ResultRow r;
    r.scheme = fields[0];
    r.channel = fields[1];
    r.k = std::stoi(fields[2]);
    r.m = std::stoi(fields[3]);
    r.n = std::stoi(fields[4]);
    r.rho = std::strtod(fields[5].c_str(), nullptr);
    r.trials = std::stol(fields[6]);
    r.seed = std::stoull(fields[7]);
    r.avg_error = std::strtod(fields[8].c_str(), nullptr);
    r.miss_rate = std::strtod(fields[9].c_str(), nullptr);
    r.avg_hit_error = std::strtod(fields[10].c_str(), nullptr);
    r.avg_residue = std::strtod(fields[11].c_str(), nullptr);
    r.wall_time_ms = std::strtod(fields[12].c_str(), nullptr);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  out << content;
  if (!out) {
    throw std::runtime_error("write failed: " + path);
  }
}

namespace {

RadarConfig radar_from_json(const nlohmann::json& j) {
  int m = 256;
  if (j.contains("m")) m = j.at("m").get<int>();
  const bool has_physical = j.contains("f0") || j.contains("ts");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "m" && key != "f0" && key != "ts" && key != "c") {
      throw std::invalid_argument("config: unknown radar field: " + key);
    }
  }
  if (!has_physical) {
    return RadarConfig::normalized(m);
  }
  if (!j.contains("f0") || !j.contains("ts")) {
    throw std::invalid_argument("config: physical radar needs f0 and ts");
  }
  const double f0 = j.at("f0").get<double>();
  const double ts = j.at("ts").get<double>();
  const double c = j.contains("c") ? j.at("c").get<double>() : kSpeedOfLight;
  return RadarConfig(f0, ts, m, c);
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") +
                                e.what());
  }
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "radar" && key != "k_targets" && key != "trials" &&
        key != "schemes" && key != "channels" && key != "densities" &&
        key != "master_seed" && key != "out" && key != "workers") {
      throw std::invalid_argument("config: unknown field: " + key);
    }
  }
  try {
    if (j.contains("radar")) cfg.radar = radar_from_json(j.at("radar"));
    if (j.contains("k_targets")) cfg.k_targets = j.at("k_targets").get<int>();
    if (j.contains("trials")) cfg.trials = j.at("trials").get<long>();
    if (j.contains("schemes")) {
      cfg.schemes.clear();
      for (const auto& s : j.at("schemes")) {
        cfg.schemes.push_back(parse_scheme(s.get<std::string>()));
      }
    }
    if (j.contains("channels")) {
      cfg.channels.clear();
      for (const auto& s : j.at("channels")) {
        cfg.channels.push_back(parse_channel(s.get<std::string>()));
      }
    }
    if (j.contains("densities")) {
      cfg.densities = j.at("densities").get<std::vector<double>>();
    }
    if (j.contains("master_seed")) {
      cfg.master_seed = j.at("master_seed").get<std::uint64_t>();
    }
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("workers")) cfg.workers = j.at("workers").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("config: bad field type: ") +
                                e.what());
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_json(buf.str());
}

}  // namespace qcomp

#ifndef QCOMP_HARNESS_HPP
#define QCOMP_HARNESS_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qcomp/dictionary.hpp"
#include "qcomp/evaluate.hpp"
#include "qcomp/signal.hpp"

namespace qcomp {

enum class ChannelKind { full, onebit, onebit_dither };

std::string channel_name(ChannelKind c);
ChannelKind parse_channel(const std::string& name);
InterpolationScheme parse_scheme(const std::string& name);

/// Monte-Carlo sweep description. Defaults reproduce the reference
/// experiment at desk scale: M = 256 with unit span, two targets,
/// 2000 trials per cell (use trials = 10000 for full fidelity), both
/// reconstruction schemes of interest and all three measurement channels
/// over the usual grid-density ladder.
struct ExperimentConfig {
  RadarConfig radar = RadarConfig::normalized(256);
  int k_targets = 2;
  long trials = 2000;
  std::vector<InterpolationScheme> schemes = {InterpolationScheme::none,
                                              InterpolationScheme::taylor1};
  std::vector<ChannelKind> channels = {ChannelKind::full, ChannelKind::onebit,
                                       ChannelKind::onebit_dither};
  std::vector<double> densities = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5,
                                   1.75, 2.0,  2.5,  3.0, 4.0,  5.0};
  std::uint64_t master_seed = 42;
  std::string out = "results.csv";
  int workers = 0;  // 0 = all hardware threads
};

/// One sweep cell's aggregated results plus its configuration echo.
struct ResultRow {
  std::string scheme;
  std::string channel;
  int k = 0;
  int m = 0;
  int n = 0;
  double rho = 0.0;
  long trials = 0;
  std::uint64_t seed = 0;
  double avg_error = 0.0;
  double miss_rate = 0.0;
  double avg_hit_error = 0.0;  // NaN when every estimate missed
  double avg_residue = 0.0;
  double wall_time_ms = 0.0;
};

/// Canonical cell identifier; hashed into the per-trial seeds, so a cell's
/// trial streams depend on what the cell computes, never on its position
/// in the sweep.
std::string cell_id(int k_targets, int m_samples, int n_bins,
                    InterpolationScheme scheme, ChannelKind channel);

/// One Monte-Carlo trial from a derived seed: sample a scene, synthesize,
/// pick the quantizer resolution from the clean signal, draw the dither if
/// the channel calls for one, measure, solve, and score.
TrialOutcome run_trial(const RadarConfig& radar, int k_targets,
                       const InterpolatedDictionary& dict, ChannelKind kind,
                       std::uint64_t trial_seed);

/// Same pipeline with a caller-supplied scene (deterministic test entry);
/// the stream is only used for the dither draw.
TrialOutcome run_trial_with_scene(const RadarConfig& radar, const Scene& scene,
                                  const InterpolatedDictionary& dict,
                                  ChannelKind kind, RngStream& rng);

struct SweepOptions {
  /// Millisecond clock for the wall_time_ms column. Empty = steady clock.
  /// Injecting a constant clock makes output files byte-reproducible.
  std::function<double()> now_ms;
  /// Per-cell progress lines, optional.
  std::ostream* progress = nullptr;
};

/// Run the whole scheme x channel x density grid. Trials within a cell are
/// distributed over an OpenMP team; outcomes are gathered by trial index,
/// so results are invariant to the worker count.
std::vector<ResultRow> run_sweep(const ExperimentConfig& cfg,
                                 const SweepOptions& options = {});

/// CSV with the fixed header and 9-significant-digit values.
std::string to_csv(std::span<const ResultRow> rows);
/// JSON array with the same field names.
std::string to_json(std::span<const ResultRow> rows);
std::vector<ResultRow> parse_csv(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

/// Config-file (JSON) loading; field names mirror ExperimentConfig.
ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

}  // namespace qcomp

#endif  // QCOMP_HARNESS_HPP

#ifndef QCOMP_EVALUATE_HPP
#define QCOMP_EVALUATE_HPP

#include <optional>
#include <span>
#include <vector>

#include "qcomp/quantize.hpp"
#include "qcomp/signal.hpp"
#include "qcomp/solver.hpp"

namespace qcomp {

/// Wrapped distance on the period-P torus: min over integers w of
/// |a - b + w P|. Symmetric, in [0, P/2].
double torus_distance(double a, double b, double period);

/// Velocity error in intrinsic-resolution units:
/// torus_distance(v_hat, v_true, P) / (P / M). An estimate is a miss when
/// this reaches 1.
double normalized_error(double v_hat, double v_true, const RadarConfig& cfg);

struct Pairing {
  /// assignment[k] = index of the estimate paired with truth k.
  std::vector<int> assignment;
  std::vector<double> errors;  // per-truth normalized errors E_k
};

/// Estimate-to-truth association minimizing the miss count, ties broken
/// by the smallest total error. Exhaustive over permutations for K <= 8,
/// assignment-algorithm based above.
Pairing pair_estimates(std::span<const Estimate> estimates,
                       std::span<const Target> truths,
                       const RadarConfig& cfg);

/// Normalized reconstruction error ||input - A(reconstruction)|| / ||input||,
/// where input is the solver's measurement (y for the full-resolution
/// channel, z for the quantized ones) and A the trial's channel.
double residue_metric(const ComplexSignal& input,
                      const MeasurementChannel& channel,
                      const ComplexSignal& reconstruction);

struct TrialOutcome {
  std::vector<double> errors;   // E_k under the chosen pairing
  std::vector<bool> misses;     // E_k >= 1
  std::vector<int> assignment;
  double residue = 0.0;
};

struct MetricsSummary {
  double avg_error = 0.0;
  double miss_rate = 0.0;
  std::optional<double> avg_hit_error;  // absent when everything missed
  double avg_residue = 0.0;
  long trial_count = 0;
};

/// Fold trial outcomes into the four reported metrics.
/// avg_error averages the per-trial mean error; miss_rate counts misses
/// over all K * trials estimates; avg_hit_error pools unmissed estimates
/// across trials.
MetricsSummary aggregate(std::span<const TrialOutcome> outcomes);

}  // namespace qcomp

#endif  // QCOMP_EVALUATE_HPP

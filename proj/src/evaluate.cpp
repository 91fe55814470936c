#include "qcomp/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qcomp {

double torus_distance(double a, double b, double period) {
  if (!(period > 0.0)) {
    throw std::invalid_argument("torus_distance: period must be positive");
  }
  return std::abs(std::remainder(a - b, period));
}

double normalized_error(double v_hat, double v_true, const RadarConfig& cfg) {
  return torus_distance(v_hat, v_true, cfg.span()) / cfg.resolution();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// assignment[truth] = estimate index, minimizing total cost, exhaustively
// over all K! permutations. next_permutation enumerates candidates in
// lexicographic order, so ties resolve deterministically.
std::vector<int> solve_exhaustive(const std::vector<double>& cost, int k) {
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best = perm;
  double best_total = kInf;
  do {
    double total = 0.0;
    for (int i = 0; i < k; ++i) {
      total += cost[static_cast<std::size_t>(i) * k +
                    static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    }
    if (total < best_total) {
      best_total = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// O(K^3) shortest-augmenting-path assignment (Kuhn-Munkres with
// potentials) for the larger-K case.
std::vector<int> solve_hungarian(const std::vector<double>& cost, int n) {
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> matched_row(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) {
    matched_row[0] = i;
    int j0 = 0;
    std::vector<double> min_slack(static_cast<std::size_t>(n) + 1, kInf);
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    do {
      used[static_cast<std::size_t>(j0)] = 1;
      const int i0 = matched_row[static_cast<std::size_t>(j0)];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost[static_cast<std::size_t>(i0 - 1) * n +
                                static_cast<std::size_t>(j - 1)] -
                           u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < min_slack[static_cast<std::size_t>(j)]) {
          min_slack[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (min_slack[static_cast<std::size_t>(j)] < delta) {
          delta = min_slack[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(matched_row[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[static_cast<std::size_t>(j0)] != 0);
    do {
      const int j1 = way[static_cast<std::size_t>(j0)];
      matched_row[static_cast<std::size_t>(j0)] =
          matched_row[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> assignment(static_cast<std::size_t>(n), -1);
  for (int j = 1; j <= n; ++j) {
    const int row = matched_row[static_cast<std::size_t>(j)];
    if (row > 0) assignment[static_cast<std::size_t>(row - 1)] = j - 1;
  }
  return assignment;
}

}  // namespace

Pairing pair_estimates(std::span<const Estimate> estimates,
                       std::span<const Target> truths,
                       const RadarConfig& cfg) {
  const int k = static_cast<int>(truths.size());
  if (estimates.size() != truths.size() || k == 0) {
    throw std::invalid_argument("pair_estimates: count mismatch");
  }

  std::vector<double> error(static_cast<std::size_t>(k) * k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      error[static_cast<std::size_t>(i) * k + static_cast<std::size_t>(j)] =
          normalized_error(estimates[static_cast<std::size_t>(j)].v_hat,
                           truths[static_cast<std::size_t>(i)].v,
                           cfg);
    }
  }

  // A miss outweighs any achievable error total: E_k <= M/2 per estimate,
  // so K * M strictly dominates the sum and the combined scalar cost
  // realizes the (miss count, total error) lexicographic objective.
  const double big =
      static_cast<double>(k) * static_cast<double>(cfg.m_samples);
  std::vector<double> cost(error.size());
  for (std::size_t idx = 0; idx < error.size(); ++idx) {
    cost[idx] = error[idx] >= 1.0 ? error[idx] + big : error[idx];
  }

  Pairing p;
  p.assignment = k <= 8 ? solve_exhaustive(cost, k) : solve_hungarian(cost, k);
  p.errors.resize(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    p.errors[static_cast<std::size_t>(i)] =
        error[static_cast<std::size_t>(i) * k +
              static_cast<std::size_t>(p.assignment[static_cast<std::size_t>(i)])];
  }
  return p;
}

double residue_metric(const ComplexSignal& input,
                      const MeasurementChannel& channel,
                      const ComplexSignal& reconstruction) {
  const double denom = l2_norm(input);
  if (denom == 0.0) {
    throw std::invalid_argument("residue_metric: zero input norm");
  }
  const ComplexSignal measured = apply_channel(channel, reconstruction);
  double acc = 0.0;
  for (std::size_t j = 0; j < input.size(); ++j) {
    acc += std::norm(input[j] - measured[j]);
  }
  return std::sqrt(acc) / denom;
}

MetricsSummary aggregate(std::span<const TrialOutcome> outcomes) {
  if (outcomes.empty()) {
    throw std::invalid_argument("aggregate: no outcomes");
  }
  MetricsSummary s;
  s.trial_count = static_cast<long>(outcomes.size());
  long total_estimates = 0;
  long total_misses = 0;
  double hit_sum = 0.0;
  long hit_count = 0;
  double avg_sum = 0.0;
  double residue_sum = 0.0;
  for (const TrialOutcome& o : outcomes) {
    const std::size_t k = o.errors.size();
    if (k == 0 || k != outcomes.front().errors.size()) {
      throw std::invalid_argument("aggregate: inhomogeneous outcomes");
    }
    double trial_sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      trial_sum += o.errors[i];
      if (o.errors[i] >= 1.0) {
        ++total_misses;
      } else {
        hit_sum += o.errors[i];
        ++hit_count;
      }
    }
    avg_sum += trial_sum / static_cast<double>(k);
    residue_sum += o.residue;
    total_estimates += static_cast<long>(k);
  }
  s.avg_error = avg_sum / static_cast<double>(s.trial_count);
  s.miss_rate =
      static_cast<double>(total_misses) / static_cast<double>(total_estimates);
  if (hit_count > 0) {
    s.avg_hit_error = hit_sum / static_cast<double>(hit_count);
  }
  s.avg_residue = residue_sum / static_cast<double>(s.trial_count);
  return s;
}

}  // namespace qcomp

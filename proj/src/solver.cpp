#include "qcomp/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "qcomp/kernels.hpp"

namespace qcomp {

namespace {

struct SplitSignal {
  std::vector<double> re;
  std::vector<double> im;

  explicit SplitSignal(const ComplexSignal& s)
      : re(s.size()), im(s.size()) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      re[j] = s[j].real();
      im[j] = s[j].imag();
    }
  }
};

// Correction objective, negated: for fixed t the optimal gain is
// <C(t), beta> / ||C(t)||^2 (C real), which leaves
// ||beta||^2 - |<C(t), beta>|^2 / ||C(t)||^2 to minimize. Maximizing
// gain_score(t) = |<C(t), beta>|^2 / ||C(t)||^2 is equivalent.
double gain_score(InterpolationScheme scheme, double step,
                  std::span<const std::complex<double>> beta, double t) {
  const std::array<double, 3> c = mapping(scheme, t, step);
  std::complex<double> proj(0.0, 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    proj += c[i] * beta[i];
    norm2 += c[i] * c[i];
  }
  return std::norm(proj) / norm2;
}

// d/dt of the mapping coefficients.
std::array<double, 3> mapping_slope(InterpolationScheme scheme, double t) {
  switch (scheme) {
    case InterpolationScheme::none: return {0.0, 0.0, 0.0};
    case InterpolationScheme::taylor1: return {0.0, 1.0, 0.0};
    case InterpolationScheme::taylor2: return {0.0, 1.0, t};
  }
  return {0.0, 0.0, 0.0};
}

// Derivative of gain_score up to the positive factor ||C||^4. Locating its
// downward zero crossing pins the flat maximum far more precisely than
// comparing near-equal objective values can.
double gain_score_slope(InterpolationScheme scheme, double step,
                        std::span<const std::complex<double>> beta, double t) {
  const std::array<double, 3> c = mapping(scheme, t, step);
  const std::array<double, 3> dc = mapping_slope(scheme, t);
  std::complex<double> p(0.0, 0.0);
  std::complex<double> dp(0.0, 0.0);
  double q = 0.0;
  double dq = 0.0;
  for (std::size_t i = 0; i < beta.size(); ++i) {
    p += c[i] * beta[i];
    dp += dc[i] * beta[i];
    q += c[i] * c[i];
    dq += 2.0 * c[i] * dc[i];
  }
  const double n = std::norm(p);
  const double dn = 2.0 * (p.real() * dp.real() + p.imag() * dp.imag());
  return dn * q - n * dq;
}

}  // namespace

int select_bin(const InterpolatedDictionary& dict, const ComplexSignal& r,
               const std::vector<int>& excluded) {
  const auto atoms = dict.scan_view();
  if (r.size() != static_cast<std::size_t>(atoms.m_samples)) {
    throw std::invalid_argument("select_bin: residue length mismatch");
  }
  std::vector<unsigned char> mask(static_cast<std::size_t>(atoms.n_bins), 0);
  for (int n : excluded) {
    if (n >= 0 && n < atoms.n_bins) mask[static_cast<std::size_t>(n)] = 1;
  }

  const SplitSignal sig(r);
  std::vector<double> mag2(static_cast<std::size_t>(atoms.n_bins));
  kernels::correlation_mag2(atoms, sig.re.data(), sig.im.data(), mag2.data());

  const int best =
      kernels::argmax_unmasked(mag2.data(), mask.data(), atoms.n_bins);
  if (best < 0) {
    throw std::invalid_argument("select_bin: no candidate bins left");
  }
  return best;
}

Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& stacked,
                               const ComplexSignal& z,
                               bool* rank_deficient) {
  if (stacked.rows() != static_cast<Eigen::Index>(z.size())) {
    throw std::invalid_argument("least_squares: shape mismatch");
  }
  const Eigen::Map<const Eigen::VectorXcd> rhs(z.data(),
                                               static_cast<Eigen::Index>(z.size()));
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(stacked);
  if (rank_deficient != nullptr) {
    *rank_deficient = cod.rank() < stacked.cols();
  }
  return cod.solve(rhs);
}

ComplexSignal update_residue(const SolverProblem& problem,
                             const Eigen::MatrixXcd& stacked,
                             const Eigen::VectorXcd& beta) {
  const Eigen::VectorXcd recon = stacked * beta;
  ComplexSignal fit(recon.data(), recon.data() + recon.size());
  const ComplexSignal measured = apply_channel(problem.channel, fit);
  ComplexSignal r(problem.z.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    r[j] = problem.z[j] - measured[j];
  }
  return r;
}

CorrectionResult correct(InterpolationScheme scheme,
                         std::span<const std::complex<double>> beta_k,
                         double bin_center, double step, double span,
                         int m_samples) {
  if (beta_k.size() != static_cast<std::size_t>(interpolant_count(scheme))) {
    throw std::invalid_argument("correct: coefficient length mismatch");
  }

  double beta_norm2 = 0.0;
  for (const auto& b : beta_k) beta_norm2 += std::norm(b);
  if (std::sqrt(beta_norm2) <
      1e-12 * std::sqrt(static_cast<double>(m_samples))) {
    return {Estimate{{0.0, 0.0}, wrap_velocity(bin_center, span)}, true};
  }

  if (scheme == InterpolationScheme::none) {
    return {Estimate{beta_k[0], wrap_velocity(bin_center, span)}, false};
  }

  // Dense scan of the deviation range.
  constexpr int kScanPoints = 1024;
  const double half = 0.5 * step;
  const double dt = step / static_cast<double>(kScanPoints - 1);
  double best_t = -half;
  double best_score = -1.0;
  for (int j = 0; j < kScanPoints; ++j) {
    const double t = -half + dt * j;
    const double s = gain_score(scheme, step, beta_k, t);
    if (s > best_score) {
      best_score = s;
      best_t = t;
    }
  }

  // Local refinement inside the bracketing scan cells. The objective is a
  // low-degree rational in t, so the maximizer is the downward zero
  // crossing of its analytic derivative; bisecting that sign change
  // resolves t to machine precision even where the objective itself is
  // numerically flat. Maxima pinned to a bracket edge have no crossing and
  // keep the scanned point.
  double lo = std::max(-half, best_t - dt);
  double hi = std::min(half, best_t + dt);
  double slope_lo = gain_score_slope(scheme, step, beta_k, lo);
  double slope_hi = gain_score_slope(scheme, step, beta_k, hi);
  if (slope_lo >= 0.0 && slope_hi <= 0.0) {
    for (int it = 0; it < 200 && lo < hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double slope_mid = gain_score_slope(scheme, step, beta_k, mid);
      if (slope_mid >= 0.0) {
        lo = mid;
        slope_lo = slope_mid;
      } else {
        hi = mid;
        slope_hi = slope_mid;
      }
    }
    const double candidate = slope_lo >= -slope_hi ? lo : hi;
    const double candidate_score = gain_score(scheme, step, beta_k, candidate);
    if (candidate_score >= best_score) {
      best_score = candidate_score;
      best_t = candidate;
    }
  }
  // The domain edges stay in play (the crossing may lie outside them).
  for (const double edge : {-half, half}) {
    const double edge_score = gain_score(scheme, step, beta_k, edge);
    if (edge_score > best_score) {
      best_score = edge_score;
      best_t = edge;
    }
  }

  const std::array<double, 3> c = mapping(scheme, best_t, step);
  std::complex<double> proj(0.0, 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < beta_k.size(); ++i) {
    proj += c[i] * beta_k[i];
    norm2 += c[i] * c[i];
  }
  return {Estimate{proj / norm2, wrap_velocity(bin_center + best_t, span)},
          false};
}

std::pair<std::vector<Estimate>, SolverTrace> qcomp_solve(
    const SolverProblem& problem) {
  if (problem.dict == nullptr) {
    throw std::invalid_argument("qcomp_solve: missing dictionary");
  }
  const InterpolatedDictionary& dict = *problem.dict;
  const int m = dict.m_samples();
  const int order = dict.interpolant_count();
  const int k_targets = problem.k_targets;
  if (k_targets < 1) {
    throw std::invalid_argument("qcomp_solve: k_targets must be >= 1");
  }
  if (problem.z.size() != static_cast<std::size_t>(m)) {
    throw std::invalid_argument("qcomp_solve: measurement length mismatch");
  }
  if (static_cast<long>(k_targets) * order > m) {
    throw std::invalid_argument("qcomp_solve: more unknowns than samples");
  }

  SolverTrace trace;
  ComplexSignal residue = problem.z;
  Eigen::MatrixXcd stacked(m, 0);
  Eigen::VectorXcd beta;

  // In-loop measurement operator. The dithered quantizer is replayed with
  // its stored thresholds; the plain 1-bit channel is the classic-pursuit
  // baseline, so its loop subtracts the unquantized fit.
  const bool classic_loop =
      problem.channel.kind == MeasurementChannel::Kind::one_bit &&
      !problem.channel.dither;
  SolverProblem loop_problem = problem;
  if (classic_loop) {
    loop_problem.channel = MeasurementChannel::full_resolution();
  }

  for (int k = 0; k < k_targets; ++k) {
    const int picked = select_bin(dict, residue, trace.selected_bins);
    trace.selected_bins.push_back(picked);

    stacked.conservativeResize(Eigen::NoChange, (k + 1) * order);
    dict.fill_block(picked, stacked.rightCols(order));

    bool deficient = false;
    beta = least_squares(stacked, problem.z, &deficient);
    trace.rank_deficient = trace.rank_deficient || deficient;

    residue = update_residue(loop_problem, stacked, beta);
    trace.residue_norms.push_back(l2_norm(residue));
  }

  trace.beta_hat = beta;
  const Eigen::VectorXcd recon = stacked * beta;
  trace.final_reconstruction.assign(recon.data(), recon.data() + recon.size());

  std::vector<Estimate> estimates;
  estimates.reserve(static_cast<std::size_t>(k_targets));
  trace.degenerate_corrections.resize(static_cast<std::size_t>(k_targets));
  for (int k = 0; k < k_targets; ++k) {
    const std::span<const std::complex<double>> slice(
        beta.data() + static_cast<std::size_t>(k) * order,
        static_cast<std::size_t>(order));
    const double centre =
        dict.grid().bins[static_cast<std::size_t>(trace.selected_bins[k])];
    const CorrectionResult res = correct(dict.scheme(), slice, centre,
                                         dict.grid().step, dict.span(), m);
    trace.degenerate_corrections[static_cast<std::size_t>(k)] = res.degenerate;
    estimates.push_back(res.estimate);
  }
  return {std::move(estimates), std::move(trace)};
}

}  // namespace qcomp

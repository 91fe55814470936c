#ifndef QCOMP_SOLVER_HPP
#define QCOMP_SOLVER_HPP

#include <Eigen/Dense>
#include <span>
#include <utility>
#include <vector>

#include "qcomp/dictionary.hpp"
#include "qcomp/quantize.hpp"
#include "qcomp/signal.hpp"

namespace qcomp {

/// One greedy recovery problem: the measurement, the channel that produced
/// it (with its stored dither), the dictionary and the known target count.
struct SolverProblem {
  ComplexSignal z;
  MeasurementChannel channel;
  const InterpolatedDictionary* dict = nullptr;
  int k_targets = 0;
};

struct Estimate {
  std::complex<double> alpha_hat;
  double v_hat;
};

/// Per-run diagnostics: greedy selections, the final stacked coefficient
/// vector, residue norms after each iteration's update, and the final
/// reconstruction fed to the residue metric.
struct SolverTrace {
  std::vector<int> selected_bins;
  Eigen::VectorXcd beta_hat;
  std::vector<double> residue_norms;
  ComplexSignal final_reconstruction;
  bool rank_deficient = false;
  std::vector<bool> degenerate_corrections;
};

/// Bin whose on-grid atom best fits the residue: argmax over non-excluded
/// n of |<a(vbar_n), r>|, ties to the lowest index.
int select_bin(const InterpolatedDictionary& dict, const ComplexSignal& r,
               const std::vector<int>& excluded);

/// Minimizer of ||stacked * beta - z||_2 via a rank-revealing
/// decomposition; a rank-deficient system yields the minimum-norm solution
/// and sets *rank_deficient when provided.
Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& stacked,
                               const ComplexSignal& z,
                               bool* rank_deficient = nullptr);

/// z - A(stacked * beta), where A is the trial's channel (identity for
/// full resolution, the stored-dither quantizer otherwise).
ComplexSignal update_residue(const SolverProblem& problem,
                             const Eigen::MatrixXcd& stacked,
                             const Eigen::VectorXcd& beta);

struct CorrectionResult {
  Estimate estimate;
  bool degenerate = false;
};

/// Project one bin's coefficient slice back to a gain and an off-grid
/// velocity: minimize ||beta_k - alpha * C(v - bin_center)||_2 over
/// complex alpha and deviation t = v - bin_center in [-step/2, step/2].
/// The deviation is located by a dense scan plus local refinement.
CorrectionResult correct(InterpolationScheme scheme,
                         std::span<const std::complex<double>> beta_k,
                         double bin_center, double step, double span,
                         int m_samples);

/// Greedy quantized continuous matching pursuit: K iterations of
/// {select, stack, least-squares, residue update}, then the off-grid
/// correction of each coefficient slice. The in-loop residue replays the
/// stored dithered quantizer when the channel carries one; the plain
/// (non-dithered) 1-bit channel is treated as the classic-pursuit
/// baseline, whose loop subtracts the unquantized fit.
std::pair<std::vector<Estimate>, SolverTrace> qcomp_solve(
    const SolverProblem& problem);

}  // namespace qcomp

#endif  // QCOMP_SOLVER_HPP

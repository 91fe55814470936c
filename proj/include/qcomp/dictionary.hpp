#ifndef QCOMP_DICTIONARY_HPP
#define QCOMP_DICTIONARY_HPP

#include <Eigen/Dense>
#include <array>
#include <cassert>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "qcomp/kernels.hpp"
#include "qcomp/signal.hpp"

namespace qcomp {

/// Interpolation scheme attached to each grid bin: the number of
/// interpolant atoms I per bin is 1 (no interpolation), 2 (first-order
/// Taylor) or 3 (second-order Taylor).
enum class InterpolationScheme { none, taylor1, taylor2 };

constexpr int interpolant_count(InterpolationScheme s) {
  switch (s) {
    case InterpolationScheme::none: return 1;
    case InterpolationScheme::taylor1: return 2;
    case InterpolationScheme::taylor2: return 3;
  }
  return 1;
}

std::string scheme_name(InterpolationScheme s);

/// Uniform velocity grid over [-span/2, span/2): bin n sits at
/// -span/2 + n * step with step = span / n_bins.
struct Grid {
  int n_bins;
  double step;
  std::vector<double> bins;

  static Grid uniform(double span, int n_bins);

  double density(int m_samples) const {
    return static_cast<double>(n_bins) / static_cast<double>(m_samples);
  }
};

/// Coefficients of the mapping function C(t) expressing an atom at
/// deviation t from a bin centre in that bin's interpolant basis:
/// (1), (1, t) or (1, t, t^2/2). Entries past the scheme's I are zero.
/// |t| is expected to stay within one grid step.
inline std::array<double, 3> mapping(InterpolationScheme scheme, double t,
                                     double step) {
  assert(std::abs(t) <= step * (1.0 + 1e-12));
  (void)step;
  switch (scheme) {
    case InterpolationScheme::none: return {1.0, 0.0, 0.0};
    case InterpolationScheme::taylor1: return {1.0, t, 0.0};
    case InterpolationScheme::taylor2: return {1.0, t, 0.5 * t * t};
  }
  return {1.0, 0.0, 0.0};
}

/// Grid dictionary with per-bin interpolant blocks.
///
/// Block n is the M x I matrix D_n = [d_1[n] ... d_I[n]] where d_i[n] is
/// the (i-1)-th velocity derivative of the steering atom at bin centre n.
/// For this exponential family the derivatives are closed-form: sample m
/// of d_i[n] is (-i 2 pi m / P)^(i-1) * a_m(vbar_n), so only the atoms and
/// the per-sample derivative factors are stored; blocks are materialized
/// on demand.
class InterpolatedDictionary {
 public:
  InterpolatedDictionary(const RadarConfig& cfg, int n_bins,
                         InterpolationScheme scheme);

  const Grid& grid() const { return grid_; }
  InterpolationScheme scheme() const { return scheme_; }
  int interpolant_count() const { return ::qcomp::interpolant_count(scheme_); }
  int m_samples() const { return m_samples_; }
  double span() const { return span_; }

  /// On-grid atom d_1[n] = a(vbar_n).
  std::span<const std::complex<double>> atom(int bin) const;

  /// Full M x I interpolant block for one bin.
  Eigen::MatrixXcd block(int bin) const;

  /// Append the block of `bin` as the next I columns of `stacked`
  /// (which must already have the target size).
  void fill_block(int bin, Eigen::Ref<Eigen::MatrixXcd> columns) const;

  /// D_n * C(t): the interpolated approximation of a(vbar_n + t).
  ComplexSignal interpolate_atom(int bin, double t) const;

  kernels::AtomScanView scan_view() const {
    return {atoms_re_.data(), atoms_im_.data(), grid_.n_bins, m_samples_};
  }

 private:
  Grid grid_;
  InterpolationScheme scheme_;
  int m_samples_;
  double span_;
  ComplexSignal atoms_;             // n_bins x M, row-major
  std::vector<double> atoms_re_;    // split copy for the scan kernel
  std::vector<double> atoms_im_;
  // derivative_factors_[i][m] = (-i 2 pi m / P)^i, i = 0..I-1
  std::vector<ComplexSignal> derivative_factors_;
};

InterpolatedDictionary build_dictionary(const RadarConfig& cfg, int n_bins,
                                        InterpolationScheme scheme);

}  // namespace qcomp

#endif  // QCOMP_DICTIONARY_HPP

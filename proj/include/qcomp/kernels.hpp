#ifndef QCOMP_KERNELS_HPP
#define QCOMP_KERNELS_HPP

#include <complex>
#include <cstddef>

namespace qcomp::kernels {

/// View of the dictionary's on-grid atoms in split (structure-of-arrays)
/// layout, row-major: re[n * m_samples + j] is Re a_j(vbar_n).
struct AtomScanView {
  const double* re = nullptr;
  const double* im = nullptr;
  int n_bins = 0;
  int m_samples = 0;
};

/// Squared correlation magnitude of one atom row against a split signal:
/// |<a, r>|^2 with the conjugate-linear inner product sum_j conj(a_j) r_j.
double bin_correlation_mag2(const double* atom_re, const double* atom_im,
                            const double* sig_re, const double* sig_im,
                            int m_samples);

/// Fill out[n] = |<a(vbar_n), r>|^2 for every bin. The serial variant is
/// the reference; the parallel one splits bins across an OpenMP team and
/// produces bit-identical output (each bin is reduced in a fixed order by
/// exactly one thread).
void correlation_mag2_serial(const AtomScanView& atoms, const double* sig_re,
                             const double* sig_im, double* out);
void correlation_mag2_parallel(const AtomScanView& atoms, const double* sig_re,
                               const double* sig_im, double* out);

/// Dispatch: parallel when worthwhile and not already inside a parallel
/// region, serial otherwise.
void correlation_mag2(const AtomScanView& atoms, const double* sig_re,
                      const double* sig_im, double* out);

/// Index of the largest value whose mask entry is zero; ties go to the
/// lowest index. Returns -1 if everything is masked.
int argmax_unmasked(const double* values, const unsigned char* mask, int n);

}  // namespace qcomp::kernels

#endif  // QCOMP_KERNELS_HPP

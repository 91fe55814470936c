#include "qcomp/kernels.hpp"

#include <omp.h>

namespace qcomp::kernels {

double bin_correlation_mag2(const double* atom_re, const double* atom_im,
                            const double* sig_re, const double* sig_im,
                            int m_samples) {
  double cr = 0.0;
  double ci = 0.0;
#pragma omp simd reduction(+ : cr, ci)
  for (int j = 0; j < m_samples; ++j) {
    // <a, r> = sum conj(a_j) r_j
    cr += atom_re[j] * sig_re[j] + atom_im[j] * sig_im[j];
    ci += atom_re[j] * sig_im[j] - atom_im[j] * sig_re[j];
  }
  return cr * cr + ci * ci;
}

void correlation_mag2_serial(const AtomScanView& atoms, const double* sig_re,
                             const double* sig_im, double* out) {
  const int m = atoms.m_samples;
  for (int n = 0; n < atoms.n_bins; ++n) {
    out[n] = bin_correlation_mag2(atoms.re + static_cast<std::size_t>(n) * m,
                                  atoms.im + static_cast<std::size_t>(n) * m,
                                  sig_re, sig_im, m);
  }
}

void correlation_mag2_parallel(const AtomScanView& atoms, const double* sig_re,
                               const double* sig_im, double* out) {
  const int m = atoms.m_samples;
#pragma omp parallel for schedule(static)
  for (int n = 0; n < atoms.n_bins; ++n) {
    out[n] = bin_correlation_mag2(atoms.re + static_cast<std::size_t>(n) * m,
                                  atoms.im + static_cast<std::size_t>(n) * m,
                                  sig_re, sig_im, m);
  }
}

void correlation_mag2(const AtomScanView& atoms, const double* sig_re,
                      const double* sig_im, double* out) {
  const long work = static_cast<long>(atoms.n_bins) * atoms.m_samples;
  if (work >= 16 * 1024 && !omp_in_parallel() && omp_get_max_threads() > 1) {
    correlation_mag2_parallel(atoms, sig_re, sig_im, out);
  } else {
    correlation_mag2_serial(atoms, sig_re, sig_im, out);
  }
}

int argmax_unmasked(const double* values, const unsigned char* mask, int n) {
  int best = -1;
  double best_value = 0.0;
  for (int i = 0; i < n; ++i) {
    if (mask != nullptr && mask[i]) continue;
    if (best < 0 || values[i] > best_value) {
      best = i;
      best_value = values[i];
    }
  }
  return best;
}

}  // namespace qcomp::kernels

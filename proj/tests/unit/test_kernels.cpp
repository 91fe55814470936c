#include <doctest.h>

#include <complex>
#include <vector>

#include "qcomp/dictionary.hpp"
#include "qcomp/kernels.hpp"
#include "qcomp/rng.hpp"
#include "qcomp/signal.hpp"

using namespace qcomp;

TEST_CASE("kernels: serial and parallel scans agree bitwise") {
  const RadarConfig cfg = RadarConfig::normalized(96);
  const InterpolatedDictionary dict(cfg, 300, InterpolationScheme::none);
  const auto atoms = dict.scan_view();

  RngStream rng(31);
  std::vector<double> sig_re(96), sig_im(96);
  for (int j = 0; j < 96; ++j) {
    sig_re[static_cast<std::size_t>(j)] = rng.uniform(-2.0, 2.0);
    sig_im[static_cast<std::size_t>(j)] = rng.uniform(-2.0, 2.0);
  }

  std::vector<double> serial(300), parallel(300);
  kernels::correlation_mag2_serial(atoms, sig_re.data(), sig_im.data(),
                                   serial.data());
  kernels::correlation_mag2_parallel(atoms, sig_re.data(), sig_im.data(),
                                     parallel.data());
  for (int n = 0; n < 300; ++n) {
    CHECK(serial[static_cast<std::size_t>(n)] ==
          parallel[static_cast<std::size_t>(n)]);
  }
}

TEST_CASE("kernels: correlation magnitude matches a complex-arithmetic loop") {
  const RadarConfig cfg = RadarConfig::normalized(32);
  const InterpolatedDictionary dict(cfg, 48, InterpolationScheme::none);
  const auto atoms = dict.scan_view();

  RngStream rng(8);
  ComplexSignal r(32);
  std::vector<double> sig_re(32), sig_im(32);
  for (int j = 0; j < 32; ++j) {
    r[static_cast<std::size_t>(j)] = {rng.uniform(-1.0, 1.0),
                                      rng.uniform(-1.0, 1.0)};
    sig_re[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)].real();
    sig_im[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)].imag();
  }

  std::vector<double> mag2(48);
  kernels::correlation_mag2(atoms, sig_re.data(), sig_im.data(), mag2.data());
  for (int n = 0; n < 48; ++n) {
    std::complex<double> corr(0.0, 0.0);
    const auto a = dict.atom(n);
    for (int j = 0; j < 32; ++j) {
      corr += std::conj(a[static_cast<std::size_t>(j)]) *
              r[static_cast<std::size_t>(j)];
    }
    CHECK(mag2[static_cast<std::size_t>(n)] ==
          doctest::Approx(std::norm(corr)).epsilon(1e-12));
  }
}

TEST_CASE("kernels: argmax skips masked bins and prefers the lowest index") {
  const std::vector<double> values = {1.0, 5.0, 5.0, 2.0, 5.0};
  const std::vector<unsigned char> none = {0, 0, 0, 0, 0};
  CHECK(kernels::argmax_unmasked(values.data(), none.data(), 5) == 1);

  const std::vector<unsigned char> skip1 = {0, 1, 0, 0, 0};
  CHECK(kernels::argmax_unmasked(values.data(), skip1.data(), 5) == 2);

  const std::vector<unsigned char> all = {1, 1, 1, 1, 1};
  CHECK(kernels::argmax_unmasked(values.data(), all.data(), 5) == -1);
}

#include "qcomp/quantize.hpp"

#include <cmath>
#include <stdexcept>

namespace qcomp {

namespace {

// sign(0) := +1 so the operator is deterministic on the axes.
inline double half_sign(double x, double half_delta) {
  return x < 0.0 ? -half_delta : half_delta;
}

}  // namespace

MeasurementChannel MeasurementChannel::full_resolution() {
  return MeasurementChannel{};
}

MeasurementChannel MeasurementChannel::one_bit(double delta) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("MeasurementChannel: delta must be positive");
  }
  MeasurementChannel ch;
  ch.kind = Kind::one_bit;
  ch.delta = delta;
  return ch;
}

MeasurementChannel MeasurementChannel::one_bit_dithered(double delta,
                                                        Dither dither) {
  MeasurementChannel ch = one_bit(delta);
  ch.dither = std::move(dither);
  return ch;
}

ComplexSignal quantize(double delta, const ComplexSignal& y) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("quantize: delta must be positive");
  }
  const double h = 0.5 * delta;
  ComplexSignal q(y.size());
  for (std::size_t m = 0; m < y.size(); ++m) {
    q[m] = {half_sign(y[m].real(), h), half_sign(y[m].imag(), h)};
  }
  return q;
}

double choose_delta(const ComplexSignal& y) {
  double max_mod = 0.0;
  for (const auto& z : y) max_mod = std::max(max_mod, std::abs(z));
  if (max_mod == 0.0) {
    throw std::invalid_argument("choose_delta: signal is identically zero");
  }
  return 2.0 * max_mod;
}

Dither draw_dither(double delta, int m, RngStream& rng) {
  if (!(delta > 0.0)) {
    throw std::invalid_argument("draw_dither: delta must be positive");
  }
  Dither d;
  d.delta = delta;
  d.xi.resize(static_cast<std::size_t>(m));
  const double h = 0.5 * delta;
  for (auto& z : d.xi) {
    const double re = rng.uniform(-h, h);
    const double im = rng.uniform(-h, h);
    z = {re, im};
  }
  return d;
}

ComplexSignal apply_channel(const MeasurementChannel& ch,
                            const ComplexSignal& y) {
  if (ch.kind == MeasurementChannel::Kind::full_resolution) {
    return y;
  }
  if (!ch.dither) {
    return quantize(ch.delta, y);
  }
  const ComplexSignal& xi = ch.dither->xi;
  if (xi.size() != y.size()) {
    throw std::invalid_argument("apply_channel: dither length mismatch");
  }
  const double h = 0.5 * ch.delta;
  ComplexSignal q(y.size());
  for (std::size_t m = 0; m < y.size(); ++m) {
    q[m] = {half_sign(y[m].real() + xi[m].real(), h),
            half_sign(y[m].imag() + xi[m].imag(), h)};
  }
  return q;
}

}  // namespace qcomp

#ifndef QCOMP_QUANTIZE_HPP
#define QCOMP_QUANTIZE_HPP

#include <optional>

#include "qcomp/rng.hpp"
#include "qcomp/signal.hpp"

namespace qcomp {

/// Random thresholds added before 1-bit quantization. Real and imaginary
/// components are uniform on [-delta/2, delta/2].
struct Dither {
  ComplexSignal xi;
  double delta;
};

/// Measurement front end: either the full-resolution identity or a 1-bit
/// complex quantizer of resolution delta with an optional stored dither.
///
/// A channel instance is immutable once built. The dither is drawn once
/// per trial and kept in the channel so that the solver's residue updates
/// go through the exact same operator that produced the measurement.
struct MeasurementChannel {
  enum class Kind { full_resolution, one_bit };

  Kind kind = Kind::full_resolution;
  double delta = 0.0;                  // one_bit only
  std::optional<Dither> dither;        // absent means xi = 0

  static MeasurementChannel full_resolution();
  static MeasurementChannel one_bit(double delta);
  static MeasurementChannel one_bit_dithered(double delta, Dither dither);
};

/// 1-bit complex quantizer: (delta/2) sign(Re y) + i (delta/2) sign(Im y),
/// with sign(0) := +1. Each output component has magnitude exactly delta/2.
ComplexSignal quantize(double delta, const ComplexSignal& y);

/// Smallest admissible resolution, 2 max_m |y_m|. Throws on an all-zero
/// signal (no dynamic range to span).
double choose_delta(const ComplexSignal& y);

Dither draw_dither(double delta, int m, RngStream& rng);

/// Apply the channel: identity for full resolution, quantize(delta, y + xi)
/// for one bit. Throws on a dither/signal length mismatch.
ComplexSignal apply_channel(const MeasurementChannel& ch,
                            const ComplexSignal& y);

}  // namespace qcomp

#endif  // QCOMP_QUANTIZE_HPP

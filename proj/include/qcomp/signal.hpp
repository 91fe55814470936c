#ifndef QCOMP_SIGNAL_HPP
#define QCOMP_SIGNAL_HPP

#include <complex>
#include <vector>

#include "qcomp/rng.hpp"

namespace qcomp {

inline constexpr double kSpeedOfLight = 299'792'458.0;

/// Length-M vector of complex samples. Received signals, measurements,
/// residues and atoms all share this shape.
using ComplexSignal = std::vector<std::complex<double>>;

/// Physical and sampling parameters of the continuous-wave Doppler radar.
///
/// The unambiguous velocity span is P = c / (2 f0 Ts); velocities live on
/// the half-open interval [-P/2, P/2) and wrap around it. The intrinsic
/// resolution R = P / M is the width of the ambiguity-function main lobe
/// and is the unit all reported errors are normalized by.
struct RadarConfig {
  double f0;        // carrier frequency, Hz
  double ts;        // sampling period, s
  int m_samples;    // number of samples M
  double c = kSpeedOfLight;

  RadarConfig(double f0, double ts, int m_samples, double c = kSpeedOfLight);

  double span() const { return c / (2.0 * f0 * ts); }
  double resolution() const { return span() / static_cast<double>(m_samples); }

  /// Unit-span configuration (P = 1): velocities are then expressed
  /// directly in span units, which is how the simulator reports them.
  static RadarConfig normalized(int m_samples);
};

/// Wrap a velocity into [-span/2, span/2).
double wrap_velocity(double v, double span);

struct Target {
  std::complex<double> alpha;  // complex gain
  double v;                    // radial velocity, in [-P/2, P/2)
};

struct Scene {
  std::vector<Target> targets;

  int k() const { return static_cast<int>(targets.size()); }
};

/// Steering atom a(v): sample m equals exp(-i 2 pi (v/P) m), m = 0..M-1.
/// Every sample has unit modulus, so ||a(v)||_2 = sqrt(M).
ComplexSignal steering_atom(const RadarConfig& cfg, double v);

/// Ideal received signal: sum_k alpha_k a(v_k).
ComplexSignal synthesize(const RadarConfig& cfg, const Scene& scene);

/// Draw K targets: gains i.i.d. CN(0,1), velocities i.i.d. uniform on the
/// velocity domain. `min_separation` optionally enforces a torus-distance
/// floor between velocities (0 disables it; exact duplicates are always
/// redrawn).
Scene sample_scene(const RadarConfig& cfg, int k, RngStream& rng,
                   double min_separation = 0.0);

double l2_norm(const ComplexSignal& s);

}  // namespace qcomp

#endif  // QCOMP_SIGNAL_HPP

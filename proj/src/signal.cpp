#include "qcomp/signal.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qcomp {

RadarConfig::RadarConfig(double f0_, double ts_, int m_samples_, double c_)
    : f0(f0_), ts(ts_), m_samples(m_samples_), c(c_) {
  if (!(f0 > 0.0) || !std::isfinite(f0)) {
    throw std::invalid_argument("RadarConfig: f0 must be positive");
  }
  if (!(ts > 0.0) || !std::isfinite(ts)) {
    throw std::invalid_argument("RadarConfig: ts must be positive");
  }
  if (m_samples < 1) {
    throw std::invalid_argument("RadarConfig: m_samples must be >= 1");
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw std::invalid_argument("RadarConfig: c must be positive");
  }
}

RadarConfig RadarConfig::normalized(int m_samples) {
  // c/(2 f0 ts) = 1 exactly.
  return RadarConfig(0.5, 1.0, m_samples, 1.0);
}

double wrap_velocity(double v, double span) {
  const double half = 0.5 * span;
  double u = std::remainder(v, span);  // in [-span/2, +span/2]
  if (u >= half) u -= span;
  return u;
}

ComplexSignal steering_atom(const RadarConfig& cfg, double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("steering_atom: velocity must be finite");
  }
  const double f = wrap_velocity(v, cfg.span()) / cfg.span();  // [-1/2, 1/2)
  const double step = -2.0 * std::numbers::pi * f;
  ComplexSignal a(static_cast<std::size_t>(cfg.m_samples));
  for (int m = 0; m < cfg.m_samples; ++m) {
    a[static_cast<std::size_t>(m)] = std::polar(1.0, step * m);
  }
  return a;
}

ComplexSignal synthesize(const RadarConfig& cfg, const Scene& scene) {
  ComplexSignal y(static_cast<std::size_t>(cfg.m_samples),
                  std::complex<double>(0.0, 0.0));
  for (const Target& t : scene.targets) {
    const ComplexSignal a = steering_atom(cfg, t.v);
    for (std::size_t m = 0; m < y.size(); ++m) {
      y[m] += t.alpha * a[m];
    }
  }
  return y;
}

Scene sample_scene(const RadarConfig& cfg, int k, RngStream& rng,
                   double min_separation) {
  if (k < 1) {
    throw std::invalid_argument("sample_scene: k must be >= 1");
  }
  const double span = cfg.span();
  Scene scene;
  scene.targets.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const std::complex<double> alpha = rng.complex_normal();
    double v;
    bool ok;
    do {
      v = rng.uniform(-0.5 * span, 0.5 * span);
      ok = true;
      for (const Target& prev : scene.targets) {
        const double d = std::abs(std::remainder(v - prev.v, span));
        if (v == prev.v || d < min_separation) {
          ok = false;
          break;
        }
      }
    } while (!ok);
    scene.targets.push_back(Target{alpha, v});
  }
  return scene;
}

double l2_norm(const ComplexSignal& s) {
  double acc = 0.0;
  for (const auto& z : s) acc += std::norm(z);
  return std::sqrt(acc);
}

}  // namespace qcomp

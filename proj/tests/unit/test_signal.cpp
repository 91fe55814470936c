#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "qcomp/rng.hpp"
#include "qcomp/signal.hpp"

using namespace qcomp;

namespace {

double max_componentwise_distance(const ComplexSignal& a,
                                  const ComplexSignal& b) {
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("radar config: invariants enforced") {
  CHECK_THROWS_AS(RadarConfig(-1.0, 1e-3, 4), std::invalid_argument);
  CHECK_THROWS_AS(RadarConfig(24e9, 0.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(RadarConfig(24e9, 1e-3, 0), std::invalid_argument);
  const RadarConfig cfg = RadarConfig::normalized(256);
  CHECK(cfg.span() == 1.0);
  CHECK(cfg.resolution() == doctest::Approx(1.0 / 256));
}

TEST_CASE("wrap_velocity maps into the half-open domain") {
  const double span = 1.0;
  CHECK(wrap_velocity(0.0, span) == 0.0);
  CHECK(wrap_velocity(0.5, span) == -0.5);   // upper edge wraps down
  CHECK(wrap_velocity(-0.5, span) == -0.5);
  CHECK(wrap_velocity(0.3 + 7.0, span) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(wrap_velocity(-0.8, span) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("steering atom: zero velocity gives the all-ones vector") {
  const RadarConfig cfg = RadarConfig::normalized(16);
  const ComplexSignal a = steering_atom(cfg, 0.0);
  for (const auto& s : a) {
    CHECK(s.real() == doctest::Approx(1.0));
    CHECK(std::abs(s.imag()) < 1e-15);
  }
}

TEST_CASE("steering atom: upper edge alternates sign") {
  const RadarConfig cfg = RadarConfig::normalized(8);
  const ComplexSignal a = steering_atom(cfg, 0.5 * cfg.span());
  for (int m = 0; m < cfg.m_samples; ++m) {
    const double expected = (m % 2 == 0) ? 1.0 : -1.0;
    CHECK(a[static_cast<std::size_t>(m)].real() ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(a[static_cast<std::size_t>(m)].imag()) < 1e-12);
  }
}

TEST_CASE("steering atom: physical config matches direct evaluation") {
  // 24 GHz carrier, 1 ms sampling, M = 4, v at half a resolution cell.
  const RadarConfig cfg(24e9, 1e-3, 4);
  const double v = 0.5 * cfg.resolution();
  const ComplexSignal a = steering_atom(cfg, v);
  for (int m = 0; m < 4; ++m) {
    // Independent evaluation of the demodulated-echo phase formula.
    const std::complex<double> expected = std::exp(
        std::complex<double>(0.0, -4.0 * std::numbers::pi * cfg.f0 * cfg.ts *
                                      v / cfg.c * m));
    CHECK(std::abs(a[static_cast<std::size_t>(m)] - expected) < 1e-12);
    // And the closed-form value exp(-i pi m / 4).
    const std::complex<double> closed =
        std::polar(1.0, -std::numbers::pi * m / 4.0);
    CHECK(std::abs(a[static_cast<std::size_t>(m)] - closed) < 1e-12);
  }
}

TEST_CASE("steering atom: invariants") {
  const RadarConfig cfg = RadarConfig::normalized(64);
  RngStream rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    const double v = rng.uniform(-0.5, 0.5);
    const ComplexSignal a = steering_atom(cfg, v);

    double norm2 = 0.0;
    for (const auto& s : a) norm2 += std::norm(s);
    CHECK(norm2 == doctest::Approx(64.0).epsilon(1e-12));

    const ComplexSignal shifted = steering_atom(cfg, v + cfg.span());
    CHECK(max_componentwise_distance(a, shifted) < 1e-12);

    const ComplexSignal mirrored = steering_atom(cfg, -v);
    for (std::size_t m = 0; m < a.size(); ++m) {
      CHECK(std::abs(mirrored[m] - std::conj(a[m])) < 1e-12);
    }
  }
}

TEST_CASE("synthesize: single unit target at rest gives all ones") {
  const RadarConfig cfg = RadarConfig::normalized(8);
  Scene scene;
  scene.targets.push_back({{1.0, 0.0}, 0.0});
  const ComplexSignal y = synthesize(cfg, scene);
  for (const auto& s : y) CHECK(std::abs(s - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("synthesize: opposite gains cancel") {
  const RadarConfig cfg = RadarConfig::normalized(16);
  const std::complex<double> alpha(0.7, -1.3);
  Scene scene;
  scene.targets.push_back({alpha, 0.123});
  scene.targets.push_back({-alpha, 0.123});
  const ComplexSignal y = synthesize(cfg, scene);
  for (const auto& s : y) CHECK(std::abs(s) < 1e-12);
}

TEST_CASE("synthesize: matches a per-sample oracle") {
  const RadarConfig cfg = RadarConfig::normalized(256);
  const double r = cfg.resolution();
  Scene scene;
  scene.targets.push_back({{1.0, 1.0}, 0.3 * r});
  scene.targets.push_back({{2.0, 0.0}, -10.7 * r});
  const ComplexSignal y = synthesize(cfg, scene);

  for (int m = 0; m < cfg.m_samples; ++m) {
    std::complex<double> expected(0.0, 0.0);
    for (const Target& t : scene.targets) {
      expected += t.alpha * std::exp(std::complex<double>(
                                0.0, -2.0 * std::numbers::pi *
                                         (t.v / cfg.span()) * m));
    }
    CHECK(std::abs(y[static_cast<std::size_t>(m)] - expected) < 1e-12);
  }
}

TEST_CASE("synthesize: additive over scene concatenation") {
  const RadarConfig cfg = RadarConfig::normalized(32);
  RngStream rng(11);
  Scene s1 = sample_scene(cfg, 2, rng);
  Scene s2 = sample_scene(cfg, 3, rng);
  Scene both;
  both.targets = s1.targets;
  both.targets.insert(both.targets.end(), s2.targets.begin(),
                      s2.targets.end());
  const ComplexSignal y1 = synthesize(cfg, s1);
  const ComplexSignal y2 = synthesize(cfg, s2);
  const ComplexSignal y = synthesize(cfg, both);
  for (std::size_t m = 0; m < y.size(); ++m) {
    CHECK(std::abs(y[m] - (y1[m] + y2[m])) < 1e-12);
  }
}

TEST_CASE("sample_scene: gain and velocity statistics") {
  const RadarConfig cfg = RadarConfig::normalized(4);
  RngStream rng(42);
  const int draws = 100000;
  double gain_power = 0.0;
  double velocity_sum = 0.0;
  for (int i = 0; i < draws; ++i) {
    const Scene scene = sample_scene(cfg, 1, rng);
    gain_power += std::norm(scene.targets[0].alpha);
    velocity_sum += scene.targets[0].v;
    CHECK(scene.targets[0].v >= -0.5);
    CHECK(scene.targets[0].v < 0.5);
  }
  CHECK(gain_power / draws == doctest::Approx(1.0).epsilon(0.02));
  const double tolerance = 3.0 * cfg.span() / std::sqrt(12.0 * draws);
  CHECK(std::abs(velocity_sum / draws) < tolerance);
}

TEST_CASE("sample_scene: deterministic given the stream state") {
  const RadarConfig cfg = RadarConfig::normalized(8);
  RngStream a(42);
  RngStream b(42);
  const Scene sa = sample_scene(cfg, 2, a);
  const Scene sb = sample_scene(cfg, 2, b);
  REQUIRE(sa.targets.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(sa.targets[static_cast<std::size_t>(i)].alpha ==
          sb.targets[static_cast<std::size_t>(i)].alpha);
    CHECK(sa.targets[static_cast<std::size_t>(i)].v ==
          sb.targets[static_cast<std::size_t>(i)].v);
  }
  CHECK(sa.targets[0].v != sa.targets[1].v);
}

TEST_CASE("sample_scene: optional separation floor respected") {
  const RadarConfig cfg = RadarConfig::normalized(8);
  RngStream rng(3);
  for (int rep = 0; rep < 200; ++rep) {
    const Scene scene = sample_scene(cfg, 3, rng, 0.05);
    for (std::size_t i = 0; i < scene.targets.size(); ++i) {
      for (std::size_t j = i + 1; j < scene.targets.size(); ++j) {
        const double d = std::abs(std::remainder(
            scene.targets[i].v - scene.targets[j].v, cfg.span()));
        CHECK(d >= 0.05);
      }
    }
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qcomp/evaluate.hpp"
#include "qcomp/rng.hpp"

using namespace qcomp;

TEST_CASE("torus_distance: basics and wraparound") {
  CHECK(torus_distance(0.3, 0.3, 1.0) == 0.0);
  CHECK(torus_distance(0.1, 0.9, 1.0) == doctest::Approx(0.2));
  CHECK(torus_distance(-0.45, 0.45, 1.0) == doctest::Approx(0.1));
  CHECK_THROWS_AS(torus_distance(0.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("torus_distance: matches a windowed brute force") {
  RngStream rng(4);
  const double period = 2.5;
  for (int rep = 0; rep < 200; ++rep) {
    const double a = rng.uniform(-1.25, 1.25);
    const double b = rng.uniform(-1.25, 1.25);
    double brute = 1e300;
    for (int w = -2; w <= 2; ++w) {
      brute = std::min(brute, std::abs(a - b + w * period));
    }
    CHECK(torus_distance(a, b, period) == doctest::Approx(brute).epsilon(1e-12));
    CHECK(torus_distance(a, b, period) == torus_distance(b, a, period));
    CHECK(torus_distance(a, b, period) <= period / 2);
  }
}

TEST_CASE("torus_distance: triangle inequality on sampled triples") {
  RngStream rng(6);
  for (int rep = 0; rep < 200; ++rep) {
    const double a = rng.uniform(-0.5, 0.5);
    const double b = rng.uniform(-0.5, 0.5);
    const double c = rng.uniform(-0.5, 0.5);
    CHECK(torus_distance(a, c, 1.0) <=
          torus_distance(a, b, 1.0) + torus_distance(b, c, 1.0) + 1e-12);
  }
}

TEST_CASE("normalized_error: resolution units and the miss boundary") {
  const RadarConfig cfg = RadarConfig::normalized(256);
  const double r = cfg.resolution();
  CHECK(normalized_error(0.2, 0.2, cfg) == 0.0);
  CHECK(normalized_error(0.1 + r, 0.1, cfg) == doctest::Approx(1.0));
  CHECK(normalized_error(-0.25, 0.25, cfg) == doctest::Approx(128.0));
}

TEST_CASE("pair_estimates: identity and swapped assignments") {
  const RadarConfig cfg = RadarConfig::normalized(256);
  SUBCASE("single target") {
    const std::vector<Estimate> est = {{{1.0, 0.0}, 0.12}};
    const std::vector<Target> truth = {{{1.0, 0.0}, 0.12}};
    const Pairing p = pair_estimates(est, truth, cfg);
    CHECK(p.assignment == std::vector<int>{0});
    CHECK(p.errors[0] == 0.0);
  }
  SUBCASE("two targets reported in reverse order") {
    const std::vector<Estimate> est = {{{1.0, 0.0}, 0.3}, {{1.0, 0.0}, -0.1}};
    const std::vector<Target> truth = {{{1.0, 0.0}, -0.1}, {{1.0, 0.0}, 0.3}};
    const Pairing p = pair_estimates(est, truth, cfg);
    CHECK(p.assignment == std::vector<int>{1, 0});
    CHECK(p.errors[0] == 0.0);
    CHECK(p.errors[1] == 0.0);
  }
}

TEST_CASE("pair_estimates: miss count beats greedy nearest assignment") {
  const RadarConfig cfg = RadarConfig::normalized(256);
  const double r = cfg.resolution();
  // Truth 0 is slightly nearer to estimate 0, but handing estimate 0 to
  // truth 0 leaves truth 1 with a miss; the optimal pairing has none.
  const std::vector<Target> truth = {{{1.0, 0.0}, 0.0}, {{1.0, 0.0}, 1.9 * r}};
  const std::vector<Estimate> est = {{{1.0, 0.0}, 0.95 * r},
                                     {{1.0, 0.0}, -0.96 * r}};
  const Pairing p = pair_estimates(est, truth, cfg);
  CHECK(p.assignment == std::vector<int>{1, 0});
  CHECK(p.errors[0] == doctest::Approx(0.96));
  CHECK(p.errors[1] == doctest::Approx(0.95));
  // Greedy would have produced errors {0.95, 2.86} with one miss.
}

TEST_CASE("pair_estimates: assignment path for K > 8 matches brute force") {
  const RadarConfig cfg = RadarConfig::normalized(64);
  RngStream rng(12);
  const int k = 9;
  std::vector<Target> truth;
  std::vector<Estimate> est;
  for (int i = 0; i < k; ++i) {
    truth.push_back({{1.0, 0.0}, rng.uniform(-0.5, 0.5)});
    est.push_back({{1.0, 0.0}, rng.uniform(-0.5, 0.5)});
  }
  const Pairing p = pair_estimates(est, truth, cfg);

  // Brute-force lexicographic optimum over all 9! assignments.
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  long best_misses = k + 1;
  double best_sum = 1e300;
  do {
    long misses = 0;
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
      const double e = normalized_error(
          est[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])].v_hat,
          truth[static_cast<std::size_t>(i)].v, cfg);
      misses += e >= 1.0 ? 1 : 0;
      sum += e;
    }
    if (misses < best_misses ||
        (misses == best_misses && sum < best_sum - 1e-12)) {
      best_misses = misses;
      best_sum = sum;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  long got_misses = 0;
  double got_sum = 0.0;
  for (double e : p.errors) {
    got_misses += e >= 1.0 ? 1 : 0;
    got_sum += e;
  }
  CHECK(got_misses == best_misses);
  CHECK(got_sum == doctest::Approx(best_sum).epsilon(1e-9));
}

TEST_CASE("pair_estimates: count mismatch rejected") {
  const RadarConfig cfg = RadarConfig::normalized(16);
  const std::vector<Estimate> est = {{{1.0, 0.0}, 0.1}};
  const std::vector<Target> truth = {{{1.0, 0.0}, 0.1}, {{1.0, 0.0}, 0.2}};
  CHECK_THROWS_AS(pair_estimates(est, truth, cfg), std::invalid_argument);
}

TEST_CASE("residue_metric: ratio definition") {
  const ComplexSignal input = {{3.0, 0.0}, {0.0, 4.0}};
  const MeasurementChannel full = MeasurementChannel::full_resolution();

  SUBCASE("exact reconstruction") {
    CHECK(residue_metric(input, full, input) == 0.0);
  }
  SUBCASE("zero reconstruction") {
    const ComplexSignal zero(2, {0.0, 0.0});
    CHECK(residue_metric(input, full, zero) == doctest::Approx(1.0));
  }
  SUBCASE("quantized cross-check against a direct norm") {
    RngStream rng(9);
    ComplexSignal recon(2);
    for (auto& s : recon) s = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    const MeasurementChannel ch = MeasurementChannel::one_bit(2.0);
    const ComplexSignal z = apply_channel(ch, input);
    const ComplexSignal measured = apply_channel(ch, recon);
    double direct = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      direct += std::norm(z[i] - measured[i]);
    }
    direct = std::sqrt(direct) / l2_norm(z);
    CHECK(residue_metric(z, ch, recon) == doctest::Approx(direct));
  }
  SUBCASE("zero input rejected") {
    const ComplexSignal zero(2, {0.0, 0.0});
    CHECK_THROWS_AS(residue_metric(zero, full, input), std::invalid_argument);
  }
}

TEST_CASE("aggregate: all-zero outcomes give all-zero metrics") {
  std::vector<TrialOutcome> outcomes(4);
  for (auto& o : outcomes) {
    o.errors = {0.0, 0.0};
    o.misses = {false, false};
    o.residue = 0.0;
  }
  const MetricsSummary s = aggregate(outcomes);
  CHECK(s.avg_error == 0.0);
  CHECK(s.miss_rate == 0.0);
  REQUIRE(s.avg_hit_error.has_value());
  CHECK(*s.avg_hit_error == 0.0);
  CHECK(s.avg_residue == 0.0);
  CHECK(s.trial_count == 4);
}

TEST_CASE("aggregate: hand-computed three-trial summary") {
  std::vector<TrialOutcome> outcomes(3);
  outcomes[0].errors = {0.2, 1.5};
  outcomes[0].residue = 0.1;
  outcomes[1].errors = {0.0, 0.3};
  outcomes[1].residue = 0.2;
  outcomes[2].errors = {2.0, 3.0};
  outcomes[2].residue = 0.9;

  const MetricsSummary s = aggregate(outcomes);
  CHECK(s.avg_error == doctest::Approx((0.85 + 0.15 + 2.5) / 3.0));
  CHECK(s.miss_rate == doctest::Approx(0.5));
  REQUIRE(s.avg_hit_error.has_value());
  CHECK(*s.avg_hit_error == doctest::Approx(0.5 / 3.0));
  CHECK(s.avg_residue == doctest::Approx(0.4));

  SUBCASE("permutation invariance") {
    std::vector<TrialOutcome> shuffled = {outcomes[2], outcomes[0],
                                          outcomes[1]};
    const MetricsSummary s2 = aggregate(shuffled);
    CHECK(s2.avg_error == doctest::Approx(s.avg_error));
    CHECK(s2.miss_rate == doctest::Approx(s.miss_rate));
    CHECK(*s2.avg_hit_error == doctest::Approx(*s.avg_hit_error));
    CHECK(s2.avg_residue == doctest::Approx(s.avg_residue));
  }
}

TEST_CASE("aggregate: avg_hit_error is absent when everything misses") {
  std::vector<TrialOutcome> outcomes(2);
  outcomes[0].errors = {5.0};
  outcomes[1].errors = {2.0};
  const MetricsSummary s = aggregate(outcomes);
  CHECK(s.miss_rate == 1.0);
  CHECK(!s.avg_hit_error.has_value());
}

TEST_CASE("aggregate: malformed inputs rejected") {
  CHECK_THROWS_AS(aggregate({}), std::invalid_argument);
  std::vector<TrialOutcome> mixed(2);
  mixed[0].errors = {0.1};
  mixed[1].errors = {0.1, 0.2};
  CHECK_THROWS_AS(aggregate(mixed), std::invalid_argument);
}

#ifndef QCOMP_RNG_HPP
#define QCOMP_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace qcomp {

/// Counter-friendly pseudo-random stream (splitmix64).
///
/// The standard library distributions are implementation-defined, so every
/// draw used by the simulator goes through this class instead. Results are
/// bit-identical for a given seed on any platform, which is what makes
/// per-trial seeding and worker-count independence possible.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_unit();
  }

  /// Standard complex normal CN(0,1): real and imaginary parts are
  /// independent N(0, 1/2). Box-Muller, two uniforms per draw.
  std::complex<double> complex_normal() {
    double u1 = next_unit();
    double u2 = next_unit();
    // Guard against log(0).
    while (u1 == 0.0) u1 = next_unit();
    const double radius = std::sqrt(-std::log(u1));  // sqrt(2)*N(0,1)/sqrt(2)
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Trial seed derivation: chained splitmix64 over (master, cell, index).
/// Position-derived, so trial i of a cell sees the same stream no matter
/// how trials are scheduled across workers.
inline std::uint64_t derive_trial_seed(std::uint64_t master_seed,
                                       std::uint64_t cell_hash,
                                       std::uint64_t trial_index) {
  std::uint64_t s = splitmix64(master_seed);
  s = splitmix64(s ^ cell_hash);
  s = splitmix64(s ^ trial_index);
  return s;
}

}  // namespace qcomp

#endif  // QCOMP_RNG_HPP

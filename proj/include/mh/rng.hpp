#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>

namespace mh {

// SplitMix64 mixer (Steele/Lea/Flood). Used to whiten user seeds and to
// derive independent per-task subseeds.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t s) : state(s) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Seed-splitting rule for parallel or per-item work:
//   subseed(seed, task) = SplitMix64(seed XOR golden*(task+1)).next()
// Every sweep, trial or matrix entry that needs its own stream derives it
// this way, so results do not depend on execution order.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t task) {
  SplitMix64 s(seed ^ (0x9E3779B97F4A7C15ULL * (task + 1)));
  return s.next();
}

// Deterministic double-precision stream on top of mt19937_64. The engine is
// fully specified by the standard; we avoid std::*_distribution because their
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(SplitMix64(seed).next()) {}

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in [a, b)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // standard normal, Box-Muller (no rejection, so the draw count is fixed)
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double m = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = m * std::sin(a);
    have_spare_ = true;
    return m * std::cos(a);
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mh

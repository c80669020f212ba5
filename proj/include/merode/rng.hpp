#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "merode/types.hpp"

namespace merode {

// Seeded generator for every sampling decision in the artifact. The uniform
// mapping is done by hand because std::uniform_real_distribution is
// implementation-defined and would break byte-identical reports across
// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Complex complex_box(double lo, double hi) {
    double re = uniform(lo, hi);
    double im = uniform(lo, hi);
    return {re, im};
  }

  // Uniform argument, modulus in [rmin, rmax]; keeps draws away from 0.
  Complex complex_annulus(double rmin, double rmax) {
    double r = uniform(rmin, rmax);
    double t = uniform(0.0, 6.283185307179586);
    return {r * std::cos(t), r * std::sin(t)};
  }

  // Small rational p/q with |p| <= num_max, 1 <= q <= den_max, p != 0 option.
  std::pair<long, long> rational(long num_max, long den_max, bool nonzero) {
    long p = 0, q = 1;
    do {
      p = static_cast<long>(engine_() % static_cast<std::uint64_t>(2 * num_max + 1)) - num_max;
      q = 1 + static_cast<long>(engine_() % static_cast<std::uint64_t>(den_max));
    } while (nonzero && p == 0);
    return {p, q};
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace merode

#pragma once

#include <cstdint>
#include <random>

#include "veesys/rational.hpp"

namespace veesys {

/// The single seeded source of randomness (sample points, loops, test data).
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  long uniform_int(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

  /// p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational small_rational(long num_bound, long den_bound) {
    Rational r(uniform_int(-num_bound, num_bound), uniform_int(1, den_bound));
    r.canonicalize();
    return r;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace veesys

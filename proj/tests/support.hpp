#pragma once

#include <cmath>
#include <cstdint>

#include "qaw/scalar.hpp"

namespace qaw::test {

/// splitmix64: small, seeded and identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int integer(int lo, int hi) {
    return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// p/d with |p/d| < bound, d in [2, 12].
  Rational rational(double bound = 1.0) {
    const int d = integer(2, 12);
    const int lim = static_cast<int>(std::floor(bound * d - 1e-9));
    return Rational(integer(-lim, lim)) / d;
  }

 private:
  std::uint64_t state_;
};

inline double rel_err(double v, double ref) {
  return std::abs(v - ref) / std::max(1.0, std::abs(ref));
}

}  // namespace qaw::test

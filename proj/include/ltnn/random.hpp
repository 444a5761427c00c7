#pragma once

#include <cstdint>
#include <random>

#include "ltnn/rational.hpp"

namespace ltnn {

/// Seeded generator with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// p/q with q uniform in [1, max_den] and p/q uniform on the grid in [-radius, radius].
  Rational rational(std::int64_t radius, std::int64_t max_den = 10000) {
    const std::int64_t den = between(1, max_den);
    const std::int64_t num = between(-radius * den, radius * den);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  Vec point(std::size_t n, std::int64_t radius, std::int64_t max_den = 10000) {
    Vec v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational(radius, max_den));
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ltnn

#pragma once

#include <cstdint>
#include <random>

namespace fracdn::detail {

// mt19937_64 with bit-derived uniforms.  std::uniform_real_distribution is
// implementation-defined, so verification suites draw through this to get
// identical streams for a given seed on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // uniform in [0, 1)
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double unit_pos() { return 1.0 - unit(); }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  std::uint64_t next_u64() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace fracdn::detail

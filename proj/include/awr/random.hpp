#pragma once

#include <cstdint>
#include <random>

namespace awr {

/// Uniform doubles from a 64-bit Mersenne Twister, mapped by hand so the
/// stream does not depend on the standard library's distributions.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : rng_(seed) {}

  double operator()(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace awr

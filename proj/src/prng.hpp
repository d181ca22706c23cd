#pragma once

#include <complex>
#include <cstdint>

namespace specnorm {

// SplitMix64. Used everywhere randomness is needed so that results are
// reproducible across compilers and standard-library versions (the
// distributions in <random> are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::complex<double> complex_in_square(double half_width) {
    double re = uniform(-half_width, half_width);
    double im = uniform(-half_width, half_width);
    return {re, im};
  }

 private:
  std::uint64_t state_;
};

}  // namespace specnorm

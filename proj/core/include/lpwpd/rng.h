// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_RNG_H_
#define LPWPD_RNG_H_

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace lpwpd {

// Seeded generator with hand-written uniform/gaussian mappings so that a
// given seed yields the same stream on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller, pairs cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u = 1.0 - uniform();  // (0, 1], keeps log finite
    double r = std::sqrt(-2.0 * std::log(u));
    double theta = 2.0 * M_PI * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Circular complex normal, E|z|^2 = 1.
  std::complex<double> cgaussian() {
    double re = gaussian();
    double im = gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lpwpd

#endif  // LPWPD_RNG_H_

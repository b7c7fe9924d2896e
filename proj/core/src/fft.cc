// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/fft.h"

#include <cmath>

#include "lpwpd/errors.h"

namespace lpwpd {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& buf, bool inverse) {
  const std::size_t n = buf.size();
  if (!is_pow2(n)) {
    throw InvalidInput("fft: size must be a power of two");
  }
  if (n == 1) return;

  // Bit-reversal permutation.
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(buf[i], buf[j]);
  }

  // Per-size twiddle table, w[k] = e^{-+j 2 pi k / n}.
  const double sign = inverse ? 1.0 : -1.0;
  std::vector<std::complex<double>> w(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    double ang = sign * 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    w[k] = {std::cos(ang), std::sin(ang)};
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> even = buf[base + k];
        std::complex<double> odd = buf[base + k + len / 2] * w[k * stride];
        buf[base + k] = even + odd;
        buf[base + k + len / 2] = even - odd;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& v : buf) v *= scale;
  }
}

Eigen::VectorXcd rfft(const Eigen::VectorXd& x) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<std::complex<double>> buf(n);
  for (std::size_t i = 0; i < n; ++i) buf[i] = {x[static_cast<Eigen::Index>(i)], 0.0};
  fft_inplace(buf, false);
  Eigen::VectorXcd half(static_cast<Eigen::Index>(n / 2 + 1));
  for (std::size_t k = 0; k <= n / 2; ++k) half[static_cast<Eigen::Index>(k)] = buf[k];
  return half;
}

Eigen::VectorXd irfft(const Eigen::VectorXcd& half, int n) {
  if (n <= 0 || half.size() != n / 2 + 1) {
    throw InvalidInput("irfft: spectrum length must be n/2 + 1");
  }
  std::vector<std::complex<double>> buf(static_cast<std::size_t>(n));
  for (int k = 0; k <= n / 2; ++k) buf[static_cast<std::size_t>(k)] = half[k];
  for (int k = n / 2 + 1; k < n; ++k) {
    buf[static_cast<std::size_t>(k)] = std::conj(half[n - k]);
  }
  fft_inplace(buf, true);
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) out[i] = buf[static_cast<std::size_t>(i)].real();
  return out;
}

}  // namespace lpwpd

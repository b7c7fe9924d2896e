// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_FFT_H_
#define LPWPD_FFT_H_

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace lpwpd {

// Iterative radix-2 transform. Forward kernel e^{-j 2 pi n k / N}, no
// scaling; inverse applies 1/N. buf.size() must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& buf, bool inverse);

// X_k = \sum_n x_n e^{-j 2 pi n k / N}, k = 0..N/2 (onesided).
Eigen::VectorXcd rfft(const Eigen::VectorXd& x);

// Inverse of rfft for a real length-n signal; half.size() must be n/2 + 1.
Eigen::VectorXd irfft(const Eigen::VectorXcd& half, int n);

}  // namespace lpwpd

#endif  // LPWPD_FFT_H_

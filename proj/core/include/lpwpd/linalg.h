// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_LINALG_H_
#define LPWPD_LINALG_H_

#include <optional>

#include <Eigen/Dense>

namespace lpwpd {

// Hermitian covariance, exactly symmetrized on construction:
// diag forced real, off-diagonals averaged with their mirrored conjugates.
class HermitianCov {
 public:
  HermitianCov() = default;
  explicit HermitianCov(const Eigen::MatrixXcd& m, int sample_count = 0);

  const Eigen::MatrixXcd& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  // Frames that went into the estimate; 0 when unknown/model-built.
  int sample_count() const { return sample_count_; }

 private:
  Eigen::MatrixXcd mat_;
  int sample_count_ = 0;
};

// Lower-triangular factor L with L^H L = A (factorization runs bottom-up,
// row D-1 first). Note this is not the textbook L L^H.
struct CholFactor {
  Eigen::MatrixXcd lower;
};

// (1/T) sum_t w_t x_t x_t^H for frames = [x_1 ... x_T] (D x T).
// weights, when given, must be length T with strictly positive finite
// entries.
HermitianCov sample_cov(const Eigen::MatrixXcd& frames,
                        const Eigen::VectorXd* weights = nullptr);

// Relative diagonal loading: A + loading * (tr(A)/D) * I before factoring.
// Throws NotPositiveDefinite when a pivot is not strictly positive.
CholFactor cholesky(const HermitianCov& cov, double loading);

// 1e-10, bumped to 1e-8 when the estimate used fewer frames than dim.
double default_loading(const HermitianCov& cov);

// x with A x = b via the L^H L factorization (two triangular solves).
Eigen::VectorXcd solve_hpd(const HermitianCov& cov, const Eigen::VectorXcd& rhs,
                           double loading);

// Dominant eigenvector of a Hermitian PSD matrix by power iteration.
// Stops when ||A v - rho v|| <= tol * rho with rho the Rayleigh quotient;
// unit norm, largest-modulus entry rotated real positive. Throws
// ConvergenceFailure after max_iter applications.
Eigen::VectorXcd principal_eigvec(const HermitianCov& cov, double tol = 1e-10,
                                  int max_iter = 500);

}  // namespace lpwpd

#endif  // LPWPD_LINALG_H_

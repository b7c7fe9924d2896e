// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/linalg.h"

#include <cmath>
#include <complex>

#include "lpwpd/errors.h"

namespace lpwpd {

HermitianCov::HermitianCov(const Eigen::MatrixXcd& m, int sample_count)
    : sample_count_(sample_count) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw InvalidInput("HermitianCov: matrix must be square and nonempty");
  }
  const Eigen::Index d = m.rows();
  mat_.resize(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    mat_(i, i) = std::complex<double>(m(i, i).real(), 0.0);
    for (Eigen::Index j = 0; j < i; ++j) {
      std::complex<double> a = 0.5 * (m(i, j) + std::conj(m(j, i)));
      mat_(i, j) = a;
      mat_(j, i) = std::conj(a);
    }
  }
}

HermitianCov sample_cov(const Eigen::MatrixXcd& frames,
                        const Eigen::VectorXd* weights) {
  const Eigen::Index dim = frames.rows();
  const Eigen::Index num = frames.cols();
  if (dim < 1 || num < 1) {
    throw InvalidInput("sample_cov: frames must be D x T, nonempty");
  }
  Eigen::MatrixXcd c;
  if (weights != nullptr) {
    if (weights->size() != num) {
      throw InvalidWeight("sample_cov: weights length must match frame count");
    }
    for (Eigen::Index t = 0; t < num; ++t) {
      double w = (*weights)[t];
      if (!(w > 0.0) || !std::isfinite(w)) {
        throw InvalidWeight("sample_cov: weights must be positive and finite");
      }
    }
    c = frames * weights->asDiagonal() * frames.adjoint();
  } else {
    c = frames * frames.adjoint();
  }
  c /= static_cast<double>(num);
  return HermitianCov(c, static_cast<int>(num));
}

double default_loading(const HermitianCov& cov) {
  const int count = cov.sample_count();
  if (count > 0 && count < cov.dim()) return 1e-8;
  return 1e-10;
}

CholFactor cholesky(const HermitianCov& cov, double loading) {
  if (loading < 0.0 || !std::isfinite(loading)) {
    throw InvalidConfig("cholesky: loading must be finite and nonnegative");
  }
  const Eigen::Index d = cov.dim();
  Eigen::MatrixXcd a = cov.mat();
  if (loading > 0.0) {
    double mean_diag = a.diagonal().real().sum() / static_cast<double>(d);
    a.diagonal().array() += loading * mean_diag;
  }

  // L^H L = a: row i depends only on rows below it, so sweep bottom-up.
  //   L[i][i] = sqrt(a[i][i] - sum_{k>i} |L[k][i]|^2)
  //   L[i][j] = (a[i][j] - sum_{k>i} conj(L[k][i]) L[k][j]) / L[i][i]
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    double s = a(i, i).real();
    for (Eigen::Index k = i + 1; k < d; ++k) s -= std::norm(l(k, i));
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw NotPositiveDefinite("cholesky: pivot not strictly positive");
    }
    const double lii = std::sqrt(s);
    l(i, i) = lii;
    for (Eigen::Index j = i - 1; j >= 0; --j) {
      std::complex<double> acc = a(i, j);
      for (Eigen::Index k = i + 1; k < d; ++k) acc -= std::conj(l(k, i)) * l(k, j);
      l(i, j) = acc / lii;
    }
  }
  return CholFactor{std::move(l)};
}

Eigen::VectorXcd solve_hpd(const HermitianCov& cov, const Eigen::VectorXcd& rhs,
                           double loading) {
  if (rhs.size() != cov.dim()) {
    throw InvalidInput("solve_hpd: rhs length must match dim");
  }
  CholFactor f = cholesky(cov, loading);
  // A x = L^H (L x) = rhs
  Eigen::VectorXcd u =
      f.lower.triangularView<Eigen::Lower>().adjoint().solve(rhs);
  return f.lower.triangularView<Eigen::Lower>().solve(u);
}

Eigen::VectorXcd principal_eigvec(const HermitianCov& cov, double tol,
                                  int max_iter) {
  if (tol <= 0.0 || max_iter < 1) {
    throw InvalidConfig("principal_eigvec: tol and max_iter must be positive");
  }
  const Eigen::Index d = cov.dim();
  const Eigen::MatrixXcd& a = cov.mat();

  // e_1 plus a fixed tiny ramp so a dominant eigenvector orthogonal to e_1
  // still gets a foothold.
  Eigen::VectorXcd v(d);
  v[0] = 1.0;
  for (Eigen::Index i = 1; i < d; ++i) {
    v[i] = 1e-3 * static_cast<double>(i + 1) / static_cast<double>(d);
  }
  v.normalize();

  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    Eigen::VectorXcd av = a * v;
    double rho = av.dot(v).real();  // v^H a v for unit v
    double resid = (av - rho * v).norm();
    if (resid <= tol * rho) {
      converged = true;
      break;
    }
    double n = av.norm();
    if (n == 0.0) {
      converged = true;  // v spans the null space; rho = 0 is exact
      break;
    }
    v = av / n;
  }
  if (!converged) {
    throw ConvergenceFailure("principal_eigvec: no convergence");
  }

  Eigen::Index top = 0;
  v.cwiseAbs().maxCoeff(&top);
  double mag = std::abs(v[top]);
  if (mag > 0.0) {
    v *= std::conj(v[top]) / mag;
    v[top] = std::complex<double>(std::abs(v[top]), 0.0);
  }
  return v;
}

}  // namespace lpwpd

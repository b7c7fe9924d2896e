// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/rtf.h"

#include <cmath>

#include "lpwpd/errors.h"

namespace lpwpd {

std::vector<int> noise_frame_indices(int num_frames, const NoiseMask& mask,
                                     const AnalysisConfig& cfg, int n_samples) {
  cfg.validate();
  if (num_frames < 1 || n_samples < 1) {
    throw InvalidInput("noise_frame_indices: empty signal");
  }
  if (mask.head_ms < 0.0 || mask.tail_ms < 0.0) {
    throw InvalidMask("noise_frame_indices: negative mask span");
  }
  const int pad = cfg.pad();
  const auto head = static_cast<long>(
      std::llround(mask.head_ms * cfg.sample_rate / 1000.0));
  const auto tail = static_cast<long>(
      std::llround(mask.tail_ms * cfg.sample_rate / 1000.0));

  std::vector<int> selected;
  for (int t = 0; t < num_frames; ++t) {
    // Frame t covers padded-stream samples [t*hop, t*hop + frame_len), i.e.
    // input samples [t*hop - pad, t*hop - pad + frame_len).
    const long start = static_cast<long>(t) * cfg.hop - pad;
    const long end = start + cfg.frame_len;
    if (end <= head || start >= static_cast<long>(n_samples) - tail) {
      selected.push_back(t);
    }
  }
  if (selected.empty()) {
    throw InvalidMask("noise_frame_indices: mask selects no frames");
  }
  return selected;
}

HermitianCov estimate_noise_cov(const Eigen::MatrixXcd& bin,
                                const NoiseMask& mask,
                                const AnalysisConfig& cfg, int n_samples) {
  const std::vector<int> idx =
      noise_frame_indices(static_cast<int>(bin.cols()), mask, cfg, n_samples);
  Eigen::MatrixXcd sel(bin.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t k = 0; k < idx.size(); ++k) {
    sel.col(static_cast<Eigen::Index>(k)) = bin.col(idx[k]);
  }
  return sample_cov(sel);
}

RtfVector estimate_rtf(const HermitianCov& cov_mix, const HermitianCov& cov_noise,
                       int ref_mic) {
  const int dim = cov_mix.dim();
  if (cov_noise.dim() != dim) {
    throw InvalidInput("estimate_rtf: covariance dims differ");
  }
  if (ref_mic < 0 || ref_mic >= dim) {
    throw InvalidInput("estimate_rtf: ref_mic out of range");
  }

  CholFactor f = cholesky(cov_noise, default_loading(cov_noise));
  const auto lower = f.lower.triangularView<Eigen::Lower>();
  // W = L^{-H} R_y L^{-1}; two triangular solves via B = L^{-H} R_y and
  // W = L^{-H} B^H (R_y Hermitian).
  Eigen::MatrixXcd b = lower.adjoint().solve(cov_mix.mat());
  Eigen::MatrixXcd w = lower.adjoint().solve(b.adjoint().eval());
  Eigen::VectorXcd vdot = principal_eigvec(HermitianCov(w));
  Eigen::VectorXcd u = f.lower.adjoint() * vdot;

  if (std::abs(u[ref_mic]) < 1e-12) {
    throw DegenerateReference("estimate_rtf: reference entry vanishes");
  }
  Eigen::VectorXcd v = u / u[ref_mic];
  v[ref_mic] = 1.0;
  return RtfVector{std::move(v), ref_mic};
}

}  // namespace lpwpd

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_RTF_H_
#define LPWPD_RTF_H_

#include <vector>

#include <Eigen/Dense>

#include "lpwpd/linalg.h"
#include "lpwpd/stft.h"

namespace lpwpd {

// Relative transfer function with respect to a reference channel;
// v_tilde[ref_mic] == 1 by construction.
struct RtfVector {
  Eigen::VectorXcd v_tilde;
  int ref_mic = 0;
};

// Noise-only context at the utterance edges, in milliseconds.
struct NoiseMask {
  double head_ms = 225.0;
  double tail_ms = 75.0;
};

// Frames whose analysis window lies entirely inside the padded noise
// region: window end within the head, or window start at/after
// n_samples - tail. Zero-padding counts as noise-compatible silence.
std::vector<int> noise_frame_indices(int num_frames, const NoiseMask& mask,
                                     const AnalysisConfig& cfg, int n_samples);

// Sample covariance over the masked frames of one bin (M x T).
HermitianCov estimate_noise_cov(const Eigen::MatrixXcd& bin,
                                const NoiseMask& mask,
                                const AnalysisConfig& cfg, int n_samples);

// Covariance-whitening estimate: with L^H L = R_n, take the dominant
// eigenvector of L^{-H} R_y L^{-1}, de-whiten with L^H, normalize by the
// reference entry.
RtfVector estimate_rtf(const HermitianCov& cov_mix, const HermitianCov& cov_noise,
                       int ref_mic);

}  // namespace lpwpd

#endif  // LPWPD_RTF_H_

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_SCENE_H_
#define LPWPD_SCENE_H_

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "lpwpd/stft.h"

namespace lpwpd {

// Per-frequency convolutive transfer model: taps[f] is M x L_a, so channel
// mu of frame t is sum_l taps[f](mu, l) * s[f][t - l].
struct CtfModel {
  std::vector<Eigen::MatrixXcd> taps;

  int num_bins() const { return static_cast<int>(taps.size()); }
};

struct SceneComponents {
  SpectralFrames mixture;  // desired + late + noise, exactly
  SpectralFrames desired;  // taps l < split_delay
  SpectralFrames late;     // taps l >= split_delay
  SpectralFrames noise;
  std::vector<Eigen::VectorXcd> clean;  // the dry source, per bin
};

// Sparse circular-gaussian source: each frame is CN(0,1) with probability
// activity, else exactly 0. Deterministic per seed.
Eigen::VectorXcd synth_sparse_source(int num_frames, double activity,
                                     std::uint64_t seed);

// Convolve source with ctf per bin, split at split_delay into desired/late,
// add white circular-gaussian noise scaled so that
//   ||noise|| / ||desired + late|| == noise_level
// on the realization (noise_level 0 gives exactly zero noise).
SceneComponents synth_ctf_scene(const std::vector<Eigen::VectorXcd>& source,
                                const CtfModel& ctf, int split_delay,
                                double noise_level, std::uint64_t seed);

}  // namespace lpwpd

#endif  // LPWPD_SCENE_H_

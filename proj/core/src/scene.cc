// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/scene.h"

#include <cmath>

#include "lpwpd/errors.h"
#include "lpwpd/rng.h"

namespace lpwpd {

Eigen::VectorXcd synth_sparse_source(int num_frames, double activity,
                                     std::uint64_t seed) {
  if (num_frames < 1) {
    throw InvalidInput("synth_sparse_source: num_frames must be >= 1");
  }
  if (!(activity > 0.0) || activity > 1.0) {
    throw InvalidConfig("synth_sparse_source: activity must lie in (0, 1]");
  }
  Rng rng(seed);
  Eigen::VectorXcd s(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    std::complex<double> g = rng.cgaussian();
    s[t] = rng.uniform() < activity ? g : std::complex<double>(0.0, 0.0);
  }
  return s;
}

SceneComponents synth_ctf_scene(const std::vector<Eigen::VectorXcd>& source,
                                const CtfModel& ctf, int split_delay,
                                double noise_level, std::uint64_t seed) {
  const int num_bins = static_cast<int>(source.size());
  if (num_bins < 1 || ctf.num_bins() != num_bins) {
    throw InvalidInput("synth_ctf_scene: source/ctf bin counts must match");
  }
  const Eigen::Index channels = ctf.taps[0].rows();
  const Eigen::Index taps_len = ctf.taps[0].cols();
  if (channels < 1 || taps_len < 1) {
    throw InvalidInput("synth_ctf_scene: ctf taps must be M x L_a, nonempty");
  }
  for (const auto& t : ctf.taps) {
    if (t.rows() != channels || t.cols() != taps_len) {
      throw InvalidInput("synth_ctf_scene: ragged ctf taps");
    }
  }
  if (split_delay < 1 || split_delay > taps_len) {
    throw InvalidConfig("synth_ctf_scene: need 1 <= split_delay <= L_a");
  }
  if (noise_level < 0.0 || !std::isfinite(noise_level)) {
    throw InvalidConfig("synth_ctf_scene: noise_level must be >= 0");
  }
  const Eigen::Index frames = source[0].size();
  for (const auto& s : source) {
    if (s.size() != frames) throw InvalidInput("synth_ctf_scene: ragged source");
  }
  if (frames < 1) throw InvalidInput("synth_ctf_scene: empty source");

  SceneComponents out;
  const int m = static_cast<int>(channels);
  const int t_count = static_cast<int>(frames);
  out.desired = SpectralFrames(num_bins, m, t_count);
  out.late = SpectralFrames(num_bins, m, t_count);
  out.noise = SpectralFrames(num_bins, m, t_count);
  out.mixture = SpectralFrames(num_bins, m, t_count);
  out.clean = source;

  for (int f = 0; f < num_bins; ++f) {
    const Eigen::MatrixXcd& a = ctf.taps[static_cast<std::size_t>(f)];
    const Eigen::VectorXcd& s = source[static_cast<std::size_t>(f)];
    Eigen::MatrixXcd& d = out.desired.bin(f);
    Eigen::MatrixXcd& r = out.late.bin(f);
    for (Eigen::Index t = 0; t < frames; ++t) {
      const Eigen::Index lmax = std::min<Eigen::Index>(taps_len - 1, t);
      for (Eigen::Index l = 0; l <= lmax; ++l) {
        if (l < split_delay) {
          d.col(t) += a.col(l) * s[t - l];
        } else {
          r.col(t) += a.col(l) * s[t - l];
        }
      }
    }
  }

  // Unit-variance draws first, then one global scale fixing the realized
  // noise-to-signal amplitude ratio.
  Rng rng(seed);
  double sig_energy = 0.0;
  double raw_energy = 0.0;
  for (int f = 0; f < num_bins; ++f) {
    Eigen::MatrixXcd& n = out.noise.bin(f);
    for (Eigen::Index t = 0; t < frames; ++t) {
      for (Eigen::Index mu = 0; mu < channels; ++mu) {
        n(mu, t) = rng.cgaussian();
      }
    }
    raw_energy += n.squaredNorm();
    sig_energy += (out.desired.bin(f) + out.late.bin(f)).squaredNorm();
  }
  double scale = 0.0;
  if (noise_level > 0.0 && raw_energy > 0.0 && sig_energy > 0.0) {
    scale = noise_level * std::sqrt(sig_energy / raw_energy);
  }
  for (int f = 0; f < num_bins; ++f) {
    out.noise.bin(f) *= scale;
    out.mixture.bin(f) = out.desired.bin(f) + out.late.bin(f) + out.noise.bin(f);
  }
  return out;
}

}  // namespace lpwpd

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_STFT_H_
#define LPWPD_STFT_H_

#include <vector>

#include <Eigen/Dense>

namespace lpwpd {

enum class WindowType { kSqrtHann };

struct AnalysisConfig {
  int frame_len = 512;                       // 32 ms at 16 kHz
  int hop = 128;                             // 8 ms shift
  WindowType window = WindowType::kSqrtHann;
  double sample_rate = 16000.0;

  int num_bins() const { return frame_len / 2 + 1; }
  int pad() const { return frame_len - hop; }
  void validate() const;
};

// Onesided multichannel spectrogram: one M x T matrix per frequency bin,
// column t holding y_t across channels.
class SpectralFrames {
 public:
  SpectralFrames() = default;
  SpectralFrames(int num_bins, int num_channels, int num_frames)
      : bins_(static_cast<std::size_t>(num_bins),
              Eigen::MatrixXcd::Zero(num_channels, num_frames)),
        num_channels_(num_channels),
        num_frames_(num_frames) {}

  int num_bins() const { return static_cast<int>(bins_.size()); }
  int num_channels() const { return num_channels_; }
  int num_frames() const { return num_frames_; }

  Eigen::MatrixXcd& bin(int f) { return bins_[static_cast<std::size_t>(f)]; }
  const Eigen::MatrixXcd& bin(int f) const {
    return bins_[static_cast<std::size_t>(f)];
  }

  // Sample count of the signal this was analyzed from; 0 for frames built
  // directly in the transform domain (synthesize then derives the length
  // from the frame count).
  int source_samples = 0;

 private:
  std::vector<Eigen::MatrixXcd> bins_;
  int num_channels_ = 0;
  int num_frames_ = 0;
};

// w[n] = sqrt(0.5 - 0.5 cos(2 pi n / len)), periodic.
Eigen::VectorXd make_window(WindowType type, int len);

// audio is channels x samples. Frames are taken every hop samples after
// padding frame_len - hop zeros on both sides (plus right-fill so the last
// frame is complete), so sample n of the input sits at n + pad in the
// padded stream and T = (padded - frame_len) / hop + 1.
SpectralFrames analyze(const Eigen::MatrixXd& audio, const AnalysisConfig& cfg);

// Weighted overlap-add with the same window, normalized pointwise by the
// accumulated squared window, then trimmed back to the source length.
Eigen::MatrixXd synthesize(const SpectralFrames& frames, const AnalysisConfig& cfg);

}  // namespace lpwpd

#endif  // LPWPD_STFT_H_

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/stft.h"

#include <cmath>

#include "lpwpd/errors.h"
#include "lpwpd/fft.h"

namespace lpwpd {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void AnalysisConfig::validate() const {
  if (!is_pow2(frame_len)) {
    throw InvalidConfig("stft: frame_len must be a power of two");
  }
  if (hop <= 0 || hop > frame_len || frame_len % hop != 0) {
    throw InvalidConfig("stft: hop must divide frame_len");
  }
  if (sample_rate <= 0.0) {
    throw InvalidConfig("stft: sample_rate must be positive");
  }
}

Eigen::VectorXd make_window(WindowType type, int len) {
  if (len <= 0) throw InvalidConfig("window: length must be positive");
  Eigen::VectorXd w(len);
  switch (type) {
    case WindowType::kSqrtHann:
      for (int n = 0; n < len; ++n) {
        double hann = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / len);
        w[n] = std::sqrt(hann);
      }
      break;
  }
  return w;
}

SpectralFrames analyze(const Eigen::MatrixXd& audio, const AnalysisConfig& cfg) {
  cfg.validate();
  const int channels = static_cast<int>(audio.rows());
  const int samples = static_cast<int>(audio.cols());
  if (channels < 1 || samples < 1) {
    throw InvalidInput("analyze: audio must be channels x samples, nonempty");
  }
  if (!audio.allFinite()) {
    throw InvalidInput("analyze: audio must be finite");
  }

  const int pad = cfg.pad();
  int padded = samples + 2 * pad;
  int rem = (padded - cfg.frame_len) % cfg.hop;
  if (rem != 0) padded += cfg.hop - rem;
  const int num_frames = (padded - cfg.frame_len) / cfg.hop + 1;

  const Eigen::VectorXd window = make_window(cfg.window, cfg.frame_len);
  SpectralFrames out(cfg.num_bins(), channels, num_frames);
  out.source_samples = samples;

  Eigen::VectorXd padded_sig = Eigen::VectorXd::Zero(padded);
  Eigen::VectorXd frame(cfg.frame_len);
  for (int ch = 0; ch < channels; ++ch) {
    padded_sig.setZero();
    padded_sig.segment(pad, samples) = audio.row(ch);
    for (int t = 0; t < num_frames; ++t) {
      frame = padded_sig.segment(t * cfg.hop, cfg.frame_len).cwiseProduct(window);
      Eigen::VectorXcd spec = rfft(frame);
      for (int f = 0; f < cfg.num_bins(); ++f) out.bin(f)(ch, t) = spec[f];
    }
  }
  return out;
}

Eigen::MatrixXd synthesize(const SpectralFrames& frames, const AnalysisConfig& cfg) {
  cfg.validate();
  if (frames.num_bins() != cfg.num_bins()) {
    throw ConfigMismatch("synthesize: bin count does not match frame_len");
  }
  const int channels = frames.num_channels();
  const int num_frames = frames.num_frames();
  if (channels < 1 || num_frames < 1) {
    throw InvalidInput("synthesize: empty frames");
  }

  const int pad = cfg.pad();
  const int padded = (num_frames - 1) * cfg.hop + cfg.frame_len;
  int samples = frames.source_samples;
  if (samples <= 0) samples = padded - 2 * pad;
  if (samples <= 0 || samples + 2 * pad > padded) {
    throw InvalidInput("synthesize: source_samples inconsistent with frame count");
  }

  const Eigen::VectorXd window = make_window(cfg.window, cfg.frame_len);
  Eigen::MatrixXd out(channels, samples);
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(padded);
  Eigen::VectorXd norm = Eigen::VectorXd::Zero(padded);
  Eigen::VectorXcd spec(cfg.num_bins());

  for (int ch = 0; ch < channels; ++ch) {
    acc.setZero();
    norm.setZero();
    for (int t = 0; t < num_frames; ++t) {
      for (int f = 0; f < cfg.num_bins(); ++f) spec[f] = frames.bin(f)(ch, t);
      Eigen::VectorXd frame = irfft(spec, cfg.frame_len);
      acc.segment(t * cfg.hop, cfg.frame_len) += frame.cwiseProduct(window);
      norm.segment(t * cfg.hop, cfg.frame_len) += window.cwiseAbs2();
    }
    for (int n = 0; n < samples; ++n) {
      double d = norm[pad + n];
      out(ch, n) = d > 0.0 ? acc[pad + n] / d : 0.0;
    }
  }
  return out;
}

}  // namespace lpwpd

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_METRICS_H_
#define LPWPD_METRICS_H_

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lpwpd/stft.h"

namespace lpwpd {

// Frequency-weighted segmental SNR over a 25-triangle mel bank between
// 50 Hz and Nyquist; 25 ms Hann frames, 75% overlap, per-band SNR clipped
// to [-10, 35] dB and weighted by band magnitude^0.2. Identical signals
// score exactly 35.
double fwssnr(const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
              const AnalysisConfig& cfg);

// Time-domain segmental SNR, same framing, rectangular weighting, clipped
// to [-10, 35] dB; frames with silent reference are skipped.
double seg_snr(const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
               const AnalysisConfig& cfg);

inline double delta(double enhanced, double baseline) {
  return enhanced - baseline;
}

// Shift test against reference by the lag (|lag| <= max_lag_ms) maximizing
// the absolute cross-correlation, then trim both to the overlap.
std::pair<Eigen::VectorXd, Eigen::VectorXd> align_to_reference(
    const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
    const AnalysisConfig& cfg, double max_lag_ms = 32.0);

struct MetricReport {
  double fwssnr = 0.0;
  double seg_snr = 0.0;
  int lag = 0;
};

// Align, then score the overlapping part.
MetricReport compute_metrics(const Eigen::VectorXd& reference,
                             const Eigen::VectorXd& test,
                             const AnalysisConfig& cfg);

}  // namespace lpwpd

#endif  // LPWPD_METRICS_H_

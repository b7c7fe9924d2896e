// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_BEAMFORMER_H_
#define LPWPD_BEAMFORMER_H_

#include <vector>

#include <Eigen/Dense>

#include "lpwpd/linalg.h"
#include "lpwpd/rtf.h"

namespace lpwpd {

enum class InitScheme { kSingleChannel, kMultiChannel };

// How the per-frame weights are refreshed between solves:
//   kAuto      shape == 0 ? kVariance : kIrls
//   kVariance  conventional time-varying-gain route, w = 1 / |z|^2
//   kIrls      w = 1 / |z|^{2 - p} (identical algebra at p == 0)
enum class WeightPath { kAuto, kVariance, kIrls };

struct BeamformerConfig {
  int prediction_delay = 4;   // tau, frames the filter must not touch
  int filter_len = 12;        // L_h, total taps per channel
  double shape = 0.5;         // p in [0, 2]; 0 selects the conventional path
  int iterations = 10;
  InitScheme init = InitScheme::kMultiChannel;
  int ref_mic = 0;
  double weight_floor = 1e-8;  // relative to RMS of |y_ref|

  void validate() const;
};

// Delayed-history stack: column t is
//   [y_t; y_{t-tau}; y_{t-tau-1}; ...; y_{t-L_h+1}]  (out-of-range = 0),
// dim = M (L_h - tau + 1). The gap skips the frames a dereverberation
// filter must leave alone.
struct StackedFrames {
  Eigen::MatrixXcd data;  // dim x T
  int num_channels = 0;
  int delay = 0;
  int filter_len = 0;
};

// Convolutional filter taps on the stacked space plus the constraint vector
// it was solved against (v_bar = [v_tilde; 0]).
struct ConvFilter {
  Eigen::VectorXcd taps;
  Eigen::VectorXcd constraint;
};

struct PowerWeights {
  Eigen::VectorXd w;
};

struct EnhancedSpectrum {
  Eigen::VectorXcd z;  // z_t = h^H ybar_t, length T
};

struct IterationStats {
  double lp_cost = 0.0;              // (1/T) sum_t max(|z_t|, eps)^p
  double constraint_residual = 0.0;  // |h^H v_bar - 1|
};

struct BinDiagnostics {
  std::vector<IterationStats> per_iteration;
  double floor_abs = 0.0;
  bool underdetermined = false;  // T < stacked dim
  // filled when capture_iterates: z and taps after each iteration
  std::vector<Eigen::VectorXcd> iterates;
  std::vector<Eigen::VectorXcd> filter_iterates;
};

struct BinResult {
  EnhancedSpectrum enhanced;
  ConvFilter filter;
  BinDiagnostics diagnostics;
};

StackedFrames stack(const Eigen::MatrixXcd& bin, int delay, int filter_len);

// eps = weight_floor * RMS_t |y_{ref,t}|; tiny positive fallback when the
// reference channel is all-zero so downstream weights stay finite.
double weight_floor_abs(const Eigen::MatrixXcd& bin, const BeamformerConfig& cfg);

// First-iteration weights from the raw observation:
//   single-channel  w_t = 1 / max(|y_{ref,t}|, eps)^{2-p}
//   multi-channel   w_t = M / max(||y_t||, eps)^{2-p}
// (variance path: same numbers via lambda = max(.,eps)^2, w = 1/lambda).
PowerWeights init_weights(const Eigen::MatrixXcd& bin, const BeamformerConfig& cfg,
                          WeightPath path = WeightPath::kAuto);

// Weighted MPDR solve on the stacked space:
//   h = R^{-1} v_bar / (v_bar^H R^{-1} v_bar),  R = (1/T) Ybar W Ybar^H.
ConvFilter wpd_solve(const StackedFrames& stacked, const PowerWeights& weights,
                     const Eigen::VectorXcd& v_bar);

// IRLS refresh w_t = 1 / max(|z_t|, floor_abs)^{2 - p}.
PowerWeights update_weights(const EnhancedSpectrum& z, const BeamformerConfig& cfg,
                            double floor_abs);

// Full per-bin loop: init weights, then iterations x (solve, filter, refresh).
BinResult run_lp_wpd(const Eigen::MatrixXcd& bin, const RtfVector& rtf,
                     const BeamformerConfig& cfg,
                     WeightPath path = WeightPath::kAuto,
                     bool capture_iterates = false);

}  // namespace lpwpd

#endif  // LPWPD_BEAMFORMER_H_

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/beamformer.h"

#include <cmath>
#include <complex>

#include "lpwpd/errors.h"

namespace lpwpd {

namespace {

constexpr double kFloorFallback = 1e-150;
constexpr double kConstraintTiny = 1e-14;

WeightPath resolve(WeightPath path, double shape) {
  if (path != WeightPath::kAuto) return path;
  return shape == 0.0 ? WeightPath::kVariance : WeightPath::kIrls;
}

// Conventional route: per-frame variance lambda = max(|z|, eps)^2, w = 1/lambda.
PowerWeights variance_weights(const Eigen::VectorXcd& z, double floor_abs) {
  Eigen::VectorXd w(z.size());
  for (Eigen::Index t = 0; t < z.size(); ++t) {
    double mag = std::max(std::abs(z[t]), floor_abs);
    w[t] = 1.0 / (mag * mag);
  }
  return PowerWeights{std::move(w)};
}

PowerWeights irls_weights(const Eigen::VectorXcd& z, double shape,
                          double floor_abs) {
  const double expo = 2.0 - shape;
  Eigen::VectorXd w(z.size());
  for (Eigen::Index t = 0; t < z.size(); ++t) {
    double mag = std::max(std::abs(z[t]), floor_abs);
    w[t] = 1.0 / std::pow(mag, expo);
  }
  return PowerWeights{std::move(w)};
}

double lp_cost(const Eigen::VectorXcd& z, double shape, double floor_abs) {
  double acc = 0.0;
  for (Eigen::Index t = 0; t < z.size(); ++t) {
    acc += std::pow(std::max(std::abs(z[t]), floor_abs), shape);
  }
  return acc / static_cast<double>(z.size());
}

}  // namespace

void BeamformerConfig::validate() const {
  if (prediction_delay < 1) {
    throw InvalidConfig("beamformer: prediction_delay must be >= 1");
  }
  if (filter_len < prediction_delay) {
    throw InvalidConfig("beamformer: filter_len must be >= prediction_delay");
  }
  if (shape < 0.0 || shape > 2.0) {
    throw InvalidConfig("beamformer: shape must lie in [0, 2]");
  }
  if (iterations < 1) {
    throw InvalidConfig("beamformer: iterations must be >= 1");
  }
  if (ref_mic < 0) {
    throw InvalidConfig("beamformer: ref_mic must be >= 0");
  }
  if (!(weight_floor > 0.0) || !std::isfinite(weight_floor)) {
    throw InvalidConfig("beamformer: weight_floor must be positive");
  }
}

StackedFrames stack(const Eigen::MatrixXcd& bin, int delay, int filter_len) {
  if (delay < 1 || filter_len < delay) {
    throw InvalidConfig("stack: need 1 <= delay <= filter_len");
  }
  const Eigen::Index channels = bin.rows();
  const Eigen::Index frames = bin.cols();
  if (channels < 1 || frames < 1) {
    throw InvalidInput("stack: bin must be M x T, nonempty");
  }
  const int blocks = filter_len - delay + 1;
  StackedFrames out;
  out.num_channels = static_cast<int>(channels);
  out.delay = delay;
  out.filter_len = filter_len;
  out.data = Eigen::MatrixXcd::Zero(channels * blocks, frames);
  for (Eigen::Index t = 0; t < frames; ++t) {
    out.data.block(0, t, channels, 1) = bin.col(t);
    for (int j = 1; j < blocks; ++j) {
      const Eigen::Index src = t - delay - (j - 1);
      if (src >= 0) {
        out.data.block(j * channels, t, channels, 1) = bin.col(src);
      }
    }
  }
  return out;
}

double weight_floor_abs(const Eigen::MatrixXcd& bin, const BeamformerConfig& cfg) {
  cfg.validate();
  if (cfg.ref_mic >= bin.rows()) {
    throw InvalidInput("weight_floor_abs: ref_mic out of range");
  }
  const double rms =
      std::sqrt(bin.row(cfg.ref_mic).squaredNorm() / static_cast<double>(bin.cols()));
  const double floor_abs = cfg.weight_floor * rms;
  if (!(floor_abs > 0.0) || !std::isfinite(floor_abs)) return kFloorFallback;
  return floor_abs;
}

PowerWeights init_weights(const Eigen::MatrixXcd& bin, const BeamformerConfig& cfg,
                          WeightPath path) {
  cfg.validate();
  if (cfg.ref_mic >= bin.rows()) {
    throw InvalidInput("init_weights: ref_mic out of range");
  }
  const double floor_abs = weight_floor_abs(bin, cfg);
  const Eigen::Index frames = bin.cols();
  const double channels = static_cast<double>(bin.rows());
  const WeightPath route = resolve(path, cfg.shape);

  Eigen::VectorXd w(frames);
  for (Eigen::Index t = 0; t < frames; ++t) {
    double mag;
    double scale;
    if (cfg.init == InitScheme::kSingleChannel) {
      mag = std::max(std::abs(bin(cfg.ref_mic, t)), floor_abs);
      scale = 1.0;
    } else {
      // lambda_t = ||y_t||^2 / M  <=>  w_t = M / ||y_t||^{2-p}
      mag = std::max(bin.col(t).norm(), floor_abs);
      scale = channels;
    }
    if (route == WeightPath::kVariance) {
      w[t] = scale / (mag * mag);
    } else {
      w[t] = scale / std::pow(mag, 2.0 - cfg.shape);
    }
  }
  return PowerWeights{std::move(w)};
}

ConvFilter wpd_solve(const StackedFrames& stacked, const PowerWeights& weights,
                     const Eigen::VectorXcd& v_bar) {
  const Eigen::Index dim = stacked.data.rows();
  if (v_bar.size() != dim) {
    throw InvalidInput("wpd_solve: constraint length must match stacked dim");
  }
  HermitianCov r = sample_cov(stacked.data, &weights.w);
  Eigen::VectorXcd x = solve_hpd(r, v_bar, default_loading(r));
  const std::complex<double> denom = v_bar.dot(x);  // v_bar^H R^{-1} v_bar
  if (std::abs(denom) < kConstraintTiny) {
    throw DegenerateConstraint("wpd_solve: v^H R^{-1} v vanishes");
  }
  return ConvFilter{x / denom, v_bar};
}

PowerWeights update_weights(const EnhancedSpectrum& z, const BeamformerConfig& cfg,
                            double floor_abs) {
  cfg.validate();
  if (!(floor_abs > 0.0) || !std::isfinite(floor_abs)) {
    throw InvalidConfig("update_weights: floor must be positive");
  }
  return irls_weights(z.z, cfg.shape, floor_abs);
}

BinResult run_lp_wpd(const Eigen::MatrixXcd& bin, const RtfVector& rtf,
                     const BeamformerConfig& cfg, WeightPath path,
                     bool capture_iterates) {
  cfg.validate();
  const Eigen::Index channels = bin.rows();
  const Eigen::Index frames = bin.cols();
  if (rtf.v_tilde.size() != channels) {
    throw InvalidInput("run_lp_wpd: rtf length must match channel count");
  }
  if (cfg.ref_mic >= channels) {
    throw InvalidInput("run_lp_wpd: ref_mic out of range");
  }
  const WeightPath route = resolve(path, cfg.shape);

  StackedFrames stacked = stack(bin, cfg.prediction_delay, cfg.filter_len);
  const Eigen::Index dim = stacked.data.rows();
  Eigen::VectorXcd v_bar = Eigen::VectorXcd::Zero(dim);
  v_bar.head(channels) = rtf.v_tilde;

  BinResult out;
  out.diagnostics.floor_abs = weight_floor_abs(bin, cfg);
  out.diagnostics.underdetermined = frames < dim;
  out.diagnostics.per_iteration.reserve(static_cast<std::size_t>(cfg.iterations));

  PowerWeights w = init_weights(bin, cfg, route);
  for (int it = 0; it < cfg.iterations; ++it) {
    out.filter = wpd_solve(stacked, w, v_bar);
    out.enhanced.z = (out.filter.taps.adjoint() * stacked.data).transpose();

    IterationStats stats;
    stats.lp_cost = lp_cost(out.enhanced.z, cfg.shape, out.diagnostics.floor_abs);
    stats.constraint_residual =
        std::abs(out.filter.taps.dot(v_bar) - std::complex<double>(1.0, 0.0));
    out.diagnostics.per_iteration.push_back(stats);
    if (capture_iterates) {
      out.diagnostics.iterates.push_back(out.enhanced.z);
      out.diagnostics.filter_iterates.push_back(out.filter.taps);
    }

    if (it + 1 < cfg.iterations) {
      w = route == WeightPath::kVariance
              ? variance_weights(out.enhanced.z, out.diagnostics.floor_abs)
              : irls_weights(out.enhanced.z, cfg.shape, out.diagnostics.floor_abs);
    }
  }
  return out;
}

}  // namespace lpwpd

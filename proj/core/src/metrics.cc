// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/metrics.h"

#include <cmath>

#include "lpwpd/errors.h"
#include "lpwpd/fft.h"

namespace lpwpd {

namespace {

constexpr int kNumBands = 25;
constexpr double kBandEdgeLowHz = 50.0;
constexpr double kClipLo = -10.0;
constexpr double kClipHi = 35.0;
constexpr double kWeightExp = 0.2;

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

struct SegGrid {
  int frame = 0;
  int hop = 0;
  int count = 0;  // full frames only
};

SegGrid seg_grid(Eigen::Index n, double fs) {
  SegGrid g;
  g.frame = static_cast<int>(std::lround(0.025 * fs));
  g.hop = g.frame / 4;
  if (g.frame < 2 || g.hop < 1) {
    throw InvalidConfig("metrics: sample rate too low for 25 ms framing");
  }
  if (n < g.frame) {
    throw InvalidInput("metrics: signal shorter than one 25 ms frame");
  }
  g.count = 1 + static_cast<int>((n - g.frame) / g.hop);
  return g;
}

void check_pair(const Eigen::VectorXd& ref, const Eigen::VectorXd& test) {
  if (ref.size() != test.size()) {
    throw InvalidInput("metrics: signals must have equal length");
  }
  if (ref.size() < 1) throw InvalidInput("metrics: empty signals");
  if (!ref.allFinite() || !test.allFinite()) {
    throw InvalidInput("metrics: signals must be finite");
  }
  if (ref.squaredNorm() == 0.0) {
    throw InvalidInput("metrics: reference is identically zero");
  }
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// kNumBands triangles, mel-spaced between kBandEdgeLowHz and fs/2, sampled
// on the onesided fft grid. tri[j][k] in [0, 1].
Eigen::MatrixXd mel_bank(int nfft, double fs) {
  const int bins = nfft / 2 + 1;
  const double mel_lo = hz_to_mel(kBandEdgeLowHz);
  const double mel_hi = hz_to_mel(fs / 2.0);
  Eigen::VectorXd edges(kNumBands + 2);
  for (int j = 0; j < kNumBands + 2; ++j) {
    double mel = mel_lo + (mel_hi - mel_lo) * j / (kNumBands + 1);
    edges[j] = mel_to_hz(mel);
  }
  Eigen::MatrixXd bank = Eigen::MatrixXd::Zero(kNumBands, bins);
  for (int j = 0; j < kNumBands; ++j) {
    const double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
    for (int k = 0; k < bins; ++k) {
      const double f = fs * k / nfft;
      if (f > lo && f < mid) {
        bank(j, k) = (f - lo) / (mid - lo);
      } else if (f >= mid && f < hi) {
        bank(j, k) = (hi - f) / (hi - mid);
      }
    }
  }
  return bank;
}

double clip_db(double num, double den) {
  if (den <= 0.0) return kClipHi;
  if (num <= 0.0) return kClipLo;
  double db = 10.0 * std::log10(num / den);
  return std::min(kClipHi, std::max(kClipLo, db));
}

}  // namespace

double fwssnr(const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
              const AnalysisConfig& cfg) {
  check_pair(reference, test);
  const SegGrid g = seg_grid(reference.size(), cfg.sample_rate);
  const int nfft = next_pow2(g.frame);
  const Eigen::MatrixXd bank = mel_bank(nfft, cfg.sample_rate);

  Eigen::VectorXd window(g.frame);
  for (int n = 0; n < g.frame; ++n) {
    window[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / g.frame);
  }

  auto band_mags = [&](const Eigen::VectorXd& sig, int start) {
    Eigen::VectorXd padded = Eigen::VectorXd::Zero(nfft);
    padded.head(g.frame) = sig.segment(start, g.frame).cwiseProduct(window);
    Eigen::VectorXcd spec = rfft(padded);
    return Eigen::VectorXd(bank * spec.cwiseAbs());
  };

  double total = 0.0;
  int scored = 0;
  for (int i = 0; i < g.count; ++i) {
    const int start = i * g.hop;
    Eigen::VectorXd fr = band_mags(reference, start);
    Eigen::VectorXd ft = band_mags(test, start);
    double wsum = 0.0, acc = 0.0;
    for (int j = 0; j < kNumBands; ++j) {
      const double w = std::pow(fr[j], kWeightExp);
      if (w <= 0.0) continue;
      const double diff = fr[j] - ft[j];
      // accumulate the deviation from the cap: identical signals then sum
      // exact zeros and score kClipHi exactly
      acc += w * (clip_db(fr[j] * fr[j], diff * diff) - kClipHi);
      wsum += w;
    }
    if (wsum > 0.0) {
      total += kClipHi + acc / wsum;
      ++scored;
    }
  }
  if (scored == 0) {
    throw InvalidInput("fwssnr: no frame with reference energy");
  }
  return total / scored;
}

double seg_snr(const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
               const AnalysisConfig& cfg) {
  check_pair(reference, test);
  const SegGrid g = seg_grid(reference.size(), cfg.sample_rate);
  double total = 0.0;
  int scored = 0;
  for (int i = 0; i < g.count; ++i) {
    const int start = i * g.hop;
    const double pr = reference.segment(start, g.frame).squaredNorm();
    if (pr <= 0.0) continue;
    const double pe =
        (reference.segment(start, g.frame) - test.segment(start, g.frame))
            .squaredNorm();
    total += clip_db(pr, pe);
    ++scored;
  }
  if (scored == 0) {
    throw InvalidInput("seg_snr: no frame with reference energy");
  }
  return total / scored;
}

namespace {

Eigen::Index best_lag(const Eigen::VectorXd& reference,
                      const Eigen::VectorXd& test, const AnalysisConfig& cfg,
                      double max_lag_ms) {
  const auto n = reference.size();
  const auto max_lag = static_cast<Eigen::Index>(
      std::lround(max_lag_ms * cfg.sample_rate / 1000.0));
  Eigen::Index winner = 0;
  double best = -1.0;
  for (Eigen::Index lag = -max_lag; lag <= max_lag; ++lag) {
    // corr(lag) = sum_n ref[n] * test[n + lag] over the valid overlap
    const Eigen::Index r0 = std::max<Eigen::Index>(0, -lag);
    const Eigen::Index len = n - std::abs(lag);
    if (len < 1) continue;
    const double c =
        reference.segment(r0, len).dot(test.segment(r0 + lag, len));
    if (std::abs(c) > best) {
      best = std::abs(c);
      winner = lag;
    }
  }
  return winner;
}

}  // namespace

std::pair<Eigen::VectorXd, Eigen::VectorXd> align_to_reference(
    const Eigen::VectorXd& reference, const Eigen::VectorXd& test,
    const AnalysisConfig& cfg, double max_lag_ms) {
  check_pair(reference, test);
  const Eigen::Index lag = best_lag(reference, test, cfg, max_lag_ms);
  const Eigen::Index r0 = std::max<Eigen::Index>(0, -lag);
  const Eigen::Index len = reference.size() - std::abs(lag);
  return {reference.segment(r0, len), test.segment(r0 + lag, len)};
}

MetricReport compute_metrics(const Eigen::VectorXd& reference,
                             const Eigen::VectorXd& test,
                             const AnalysisConfig& cfg) {
  check_pair(reference, test);
  const Eigen::Index lag = best_lag(reference, test, cfg, 32.0);
  const Eigen::Index r0 = std::max<Eigen::Index>(0, -lag);
  const Eigen::Index len = reference.size() - std::abs(lag);
  MetricReport rep;
  rep.lag = static_cast<int>(lag);
  rep.fwssnr = fwssnr(reference.segment(r0, len), test.segment(r0 + lag, len), cfg);
  rep.seg_snr = seg_snr(reference.segment(r0, len), test.segment(r0 + lag, len), cfg);
  return rep;
}

}  // namespace lpwpd

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "lpwpd/beamformer.h"
#include "lpwpd/metrics.h"
#include "lpwpd/rng.h"
#include "lpwpd/stft.h"

namespace {

using namespace lpwpd;

Eigen::MatrixXcd random_bin(Rng& rng, int rows, int cols) {
  Eigen::MatrixXcd m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = rng.cgaussian();
  }
  return m;
}

// One weighted MPDR solve at stacked dim = 2 * state.range(0).
void BM_WpdSolve(benchmark::State& state) {
  const int blocks = static_cast<int>(state.range(0));
  const int frames = 2 * blocks * 4;
  Rng rng(1);
  Eigen::MatrixXcd bin = random_bin(rng, 2, frames);
  StackedFrames s = stack(bin, 4, 4 + blocks - 1);
  Eigen::VectorXd w = Eigen::VectorXd::Ones(frames);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s.data.rows());
  v[0] = 1.0;
  v[1] = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wpd_solve(s, PowerWeights{w}, v));
  }
  state.SetLabel("dim=" + std::to_string(2 * blocks));
}
BENCHMARK(BM_WpdSolve)->Arg(9)->Arg(18)->Arg(36);

// Full per-bin loop, defaults (tau 4, L_h 12, 10 iterations), M channels.
void BM_RunLpWpd(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  Rng rng(2);
  Eigen::MatrixXcd bin = random_bin(rng, m, 128);
  RtfVector rtf;
  rtf.v_tilde = Eigen::VectorXcd::Ones(m);
  rtf.ref_mic = 0;
  BeamformerConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_lp_wpd(bin, rtf, cfg));
  }
}
BENCHMARK(BM_RunLpWpd)->Arg(2)->Arg(4)->Arg(8);

// STFT analysis of state.range(0) seconds of stereo at 16 kHz.
void BM_Analyze(benchmark::State& state) {
  const int n = 16000 * static_cast<int>(state.range(0));
  Rng rng(3);
  Eigen::MatrixXd audio(2, n);
  for (int j = 0; j < n; ++j) {
    audio(0, j) = rng.gaussian();
    audio(1, j) = rng.gaussian();
  }
  AnalysisConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze(audio, cfg));
  }
}
BENCHMARK(BM_Analyze)->Arg(1)->Arg(4);

// fwssnr of one second against a noisy copy.
void BM_Fwssnr(benchmark::State& state) {
  const int n = 16000;
  Rng rng(4);
  Eigen::VectorXd ref(n), test(n);
  for (int j = 0; j < n; ++j) {
    ref[j] = rng.gaussian();
    test[j] = ref[j] + 0.1 * rng.gaussian();
  }
  AnalysisConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fwssnr(ref, test, cfg));
  }
}
BENCHMARK(BM_Fwssnr);

}  // namespace

BENCHMARK_MAIN();

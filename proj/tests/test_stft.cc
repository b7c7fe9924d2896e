// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/stft.h"

#include <cmath>
#include <complex>

#include "doctest.h"
#include "lpwpd/errors.h"
#include "lpwpd/fft.h"
#include "lpwpd/rng.h"
#include "oracles.h"

using namespace lpwpd;

namespace {

AnalysisConfig default_cfg() { return AnalysisConfig{}; }

Eigen::MatrixXd random_signal(int channels, int samples, std::uint64_t seed) {
  Rng rng(seed);
  return oracles::random_gaussian(rng, channels, samples);
}

}  // namespace

TEST_CASE("rfft matches direct DFT summation") {
  Rng rng(11);
  Eigen::VectorXd x = oracles::random_gaussian(rng, 1, 512).row(0);
  Eigen::VectorXcd full = oracles::dft_direct(x);
  Eigen::VectorXcd half = rfft(x);
  REQUIRE(half.size() == 257);
  for (int k = 0; k < 257; ++k) {
    CHECK(std::abs(half[k] - full[k]) <= 1e-9 * full.norm());
  }
}

TEST_CASE("irfft inverts rfft") {
  Rng rng(12);
  Eigen::VectorXd x = oracles::random_gaussian(rng, 1, 256).row(0);
  Eigen::VectorXd back = irfft(rfft(x), 256);
  CHECK((back - x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("fft Parseval: sum |x|^2 == (1/N) sum |X|^2") {
  Rng rng(13);
  Eigen::VectorXd x = oracles::random_gaussian(rng, 1, 512).row(0);
  Eigen::VectorXcd full = oracles::dft_direct(x);
  Eigen::VectorXcd half = rfft(x);
  double onesided = std::norm(half[0]) + std::norm(half[256]);
  for (int k = 1; k < 256; ++k) onesided += 2.0 * std::norm(half[k]);
  CHECK(x.squaredNorm() == doctest::Approx(onesided / 512.0).epsilon(1e-9));
  CHECK(x.squaredNorm() ==
        doctest::Approx(full.squaredNorm() / 512.0).epsilon(1e-9));
}

TEST_CASE("fft rejects non-power-of-two sizes") {
  std::vector<std::complex<double>> buf(96);
  CHECK_THROWS_AS(fft_inplace(buf, false), InvalidInput);
}

TEST_CASE("sqrt-hann window: w^2 overlap-adds to a constant at 75% overlap") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::VectorXd w = make_window(cfg.window, cfg.frame_len);
  CHECK(w[0] == 0.0);
  CHECK(w[cfg.frame_len / 2] == doctest::Approx(1.0));
  // interior of a long overlap-add: 4 shifted copies of w^2 cover each point
  for (int offset = 0; offset < cfg.hop; ++offset) {
    double acc = 0.0;
    for (int m = 0; m < 4; ++m) acc += w[offset + m * cfg.hop] * w[offset + m * cfg.hop];
    CHECK(acc == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("analyze: frame count and shapes for the canonical 1 s utterance") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd audio = random_signal(2, 16000, 21);
  SpectralFrames frames = analyze(audio, cfg);
  // padded = 16000 + 2*384 = 16768, (16768-512)/128 + 1 = 128
  CHECK(frames.num_frames() == 128);
  CHECK(frames.num_bins() == 257);
  CHECK(frames.num_channels() == 2);
  CHECK(frames.source_samples == 16000);
  CHECK(frames.bin(0).rows() == 2);
  CHECK(frames.bin(0).cols() == 128);
}

TEST_CASE("analyze: all-zero audio gives all-zero frames") {
  const AnalysisConfig cfg = default_cfg();
  SpectralFrames frames = analyze(Eigen::MatrixXd::Zero(1, 3000), cfg);
  for (int f = 0; f < frames.num_bins(); ++f) {
    CHECK(frames.bin(f).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("analyze: frames equal the direct DFT of the windowed padded slice") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd audio = random_signal(1, 4000, 22);
  SpectralFrames frames = analyze(audio, cfg);

  const int pad = cfg.pad();
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(pad + 4000 + pad + cfg.hop);
  padded.segment(pad, 4000) = audio.row(0);
  Eigen::VectorXd w = make_window(cfg.window, cfg.frame_len);

  for (int t : {0, 3, 11, frames.num_frames() - 1}) {
    Eigen::VectorXd slice =
        padded.segment(t * cfg.hop, cfg.frame_len).cwiseProduct(w);
    Eigen::VectorXcd ref = oracles::dft_direct(slice);
    for (int f = 0; f < cfg.num_bins(); ++f) {
      CHECK(std::abs(frames.bin(f)(0, t) - ref[f]) <= 1e-9 * (1.0 + ref.norm()));
    }
  }
}

TEST_CASE("analyze: bin-center sinusoid concentrates at its bin") {
  const AnalysisConfig cfg = default_cfg();
  const int k0 = 32;
  Eigen::MatrixXd audio(1, 8000);
  for (int n = 0; n < 8000; ++n) {
    audio(0, n) = std::cos(2.0 * M_PI * k0 * n / cfg.frame_len);
  }
  SpectralFrames frames = analyze(audio, cfg);
  // interior frames only: the signal fills the whole analysis window there
  for (int t = 10; t < frames.num_frames() - 10; t += 7) {
    double best = -1.0;
    int best_bin = -1;
    for (int f = 0; f < frames.num_bins(); ++f) {
      double mag = std::abs(frames.bin(f)(0, t));
      if (mag > best) {
        best = mag;
        best_bin = f;
      }
    }
    CHECK(best_bin == k0);
  }
}

TEST_CASE("analyze: impulse at sample 0 lands at offset pad of frame 0") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd audio = Eigen::MatrixXd::Zero(1, 2000);
  audio(0, 0) = 1.0;
  SpectralFrames frames = analyze(audio, cfg);

  const int pad = cfg.pad();
  Eigen::VectorXd w = make_window(cfg.window, cfg.frame_len);
  // X_k = w[pad] e^{-j 2 pi k pad / N}
  for (int f = 0; f < cfg.num_bins(); ++f) {
    double ang = -2.0 * M_PI * f * pad / cfg.frame_len;
    std::complex<double> want =
        w[pad] * std::complex<double>(std::cos(ang), std::sin(ang));
    CHECK(std::abs(frames.bin(f)(0, 0) - want) <= 1e-12);
  }
  // the impulse leaves the window after frame 3 (pad / hop)
  for (int t = pad / cfg.hop + 1; t < frames.num_frames(); ++t) {
    for (int f = 0; f < cfg.num_bins(); f += 64) {
      CHECK(std::abs(frames.bin(f)(0, t)) == 0.0);
    }
  }
}

TEST_CASE("analyze is linear") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd a = random_signal(1, 3000, 31);
  Eigen::MatrixXd b = random_signal(1, 3000, 32);
  SpectralFrames fa = analyze(a, cfg);
  SpectralFrames fb = analyze(b, cfg);
  SpectralFrames fab = analyze(a + 2.0 * b, cfg);
  for (int f = 0; f < fab.num_bins(); f += 16) {
    CHECK((fab.bin(f) - fa.bin(f) - 2.0 * fb.bin(f)).cwiseAbs().maxCoeff() <=
          1e-10);
  }
}

TEST_CASE("round trip synthesize(analyze(x)) == x") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd audio = random_signal(2, 5000, 41);
  Eigen::MatrixXd back = synthesize(analyze(audio, cfg), cfg);
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 5000);
  const double scale = audio.cwiseAbs().maxCoeff();
  CHECK((back - audio).cwiseAbs().maxCoeff() <= 1e-12 * scale);
}

TEST_CASE("round trip at awkward lengths (padding alignment)") {
  const AnalysisConfig cfg = default_cfg();
  for (int n : {511, 512, 513, 1000, 1025}) {
    Eigen::MatrixXd audio = random_signal(1, n, 500 + n);
    Eigen::MatrixXd back = synthesize(analyze(audio, cfg), cfg);
    REQUIRE(back.cols() == n);
    CHECK((back - audio).cwiseAbs().maxCoeff() <=
          1e-12 * audio.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("synthesize: all-zero frames give silence; single frame stays local") {
  const AnalysisConfig cfg = default_cfg();
  const int num_frames = 20;
  SpectralFrames frames(cfg.num_bins(), 1, num_frames);
  CHECK(synthesize(frames, cfg).cwiseAbs().maxCoeff() == 0.0);

  // put one windowed burst in frame 10 only
  Rng rng(7);
  Eigen::VectorXd burst = oracles::random_gaussian(rng, 1, cfg.frame_len).row(0);
  Eigen::VectorXcd spec = rfft(burst);
  for (int f = 0; f < cfg.num_bins(); ++f) frames.bin(f)(0, 10) = spec[f];

  Eigen::MatrixXd out = synthesize(frames, cfg);
  // frame 10 covers input samples [10*hop - pad, 10*hop - pad + frame_len)
  const int lo = 10 * cfg.hop - cfg.pad();
  const int hi = lo + cfg.frame_len;
  for (int n = 0; n < out.cols(); ++n) {
    if (n < lo || n >= hi) CHECK(out(0, n) == 0.0);
  }
  CHECK(out.row(0).segment(lo, hi - lo).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("synthesize derives the length when source_samples is unset") {
  const AnalysisConfig cfg = default_cfg();
  const int num_frames = 40;
  SpectralFrames frames(cfg.num_bins(), 1, num_frames);
  Eigen::MatrixXd out = synthesize(frames, cfg);
  CHECK(out.cols() == (num_frames - 1) * cfg.hop + cfg.frame_len - 2 * cfg.pad());
}

TEST_CASE("analyze/synthesize input validation") {
  const AnalysisConfig cfg = default_cfg();
  CHECK_THROWS_AS(analyze(Eigen::MatrixXd(0, 0), cfg), InvalidInput);

  Eigen::MatrixXd bad(1, 100);
  bad.setZero();
  bad(0, 5) = std::nan("");
  CHECK_THROWS_AS(analyze(bad, cfg), InvalidInput);

  AnalysisConfig broken = cfg;
  broken.hop = 100;  // does not divide 512
  CHECK_THROWS_AS(analyze(Eigen::MatrixXd::Zero(1, 600), broken), InvalidConfig);
  broken = cfg;
  broken.frame_len = 500;  // not a power of two
  CHECK_THROWS_AS(analyze(Eigen::MatrixXd::Zero(1, 600), broken), InvalidConfig);

  SpectralFrames wrong(100, 1, 4);  // 100 bins != 257
  CHECK_THROWS_AS(synthesize(wrong, cfg), ConfigMismatch);
}

TEST_CASE("analyze is deterministic") {
  const AnalysisConfig cfg = default_cfg();
  Eigen::MatrixXd audio = random_signal(2, 4096, 77);
  SpectralFrames a = analyze(audio, cfg);
  SpectralFrames b = analyze(audio, cfg);
  for (int f = 0; f < a.num_bins(); f += 32) {
    CHECK((a.bin(f) - b.bin(f)).cwiseAbs().maxCoeff() == 0.0);
  }
}

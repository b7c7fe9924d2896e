// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/beamformer.h"

#include <cmath>
#include <complex>
#include <cstdint>

#include "doctest.h"
#include "lpwpd/errors.h"
#include "lpwpd/rng.h"
#include "oracles.h"

using namespace lpwpd;
using std::complex;

namespace {

BeamformerConfig small_cfg() {
  BeamformerConfig cfg;
  cfg.prediction_delay = 2;
  cfg.filter_len = 4;
  cfg.iterations = 3;
  return cfg;
}

// Pulse train with gaps wider than every stacked delay: the stacked
// scalar-source covariance is exactly diagonal whatever the weights.
Eigen::VectorXcd pulse_source(Rng& rng, int frames, int spacing) {
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(frames);
  for (int t = 0; t < frames; t += spacing) s[t] = rng.cgaussian();
  return s;
}

RtfVector rtf_from(const Eigen::VectorXcd& v, int ref) {
  RtfVector r;
  r.v_tilde = v / v[ref];
  r.ref_mic = ref;
  return r;
}

}  // namespace

TEST_CASE("stack: shape and the canonical tap layout") {
  // M=1, tau=2, L_h=4, y = 1..5: column t=4 is [y5; y3; y2]
  Eigen::MatrixXcd bin(1, 5);
  for (int t = 0; t < 5; ++t) bin(0, t) = t + 1.0;
  StackedFrames s = stack(bin, 2, 4);
  REQUIRE(s.data.rows() == 3);  // M (L_h - tau + 1)
  REQUIRE(s.data.cols() == 5);
  CHECK(s.data(0, 4) == complex<double>(5.0, 0.0));
  CHECK(s.data(1, 4) == complex<double>(3.0, 0.0));
  CHECK(s.data(2, 4) == complex<double>(2.0, 0.0));
  // leading frames: history out of range is zero
  CHECK(s.data(0, 0) == complex<double>(1.0, 0.0));
  CHECK(s.data(1, 0) == complex<double>(0.0, 0.0));
  CHECK(s.data(2, 0) == complex<double>(0.0, 0.0));
}

TEST_CASE("stack: block j >= 1 is y_{t - tau - j + 1}, gap preserved") {
  Rng rng(1);
  const int channels = 2, frames = 30, tau = 4, lh = 12;
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, channels, frames);
  StackedFrames s = stack(bin, tau, lh);
  REQUIRE(s.data.rows() == channels * (lh - tau + 1));
  for (int t = 0; t < frames; ++t) {
    for (int j = 0; j < lh - tau + 1; ++j) {
      const int src = j == 0 ? t : t - tau - (j - 1);
      for (int mu = 0; mu < channels; ++mu) {
        complex<double> want = src >= 0 ? bin(mu, src) : complex<double>(0.0);
        CHECK(s.data(j * channels + mu, t) == want);
      }
    }
  }
}

TEST_CASE("stack: tau == L_h == 1 is the identity") {
  Rng rng(2);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 3, 7);
  StackedFrames s = stack(bin, 1, 1);
  CHECK((s.data - bin).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("stack validates the delay/length relation") {
  Eigen::MatrixXcd bin = Eigen::MatrixXcd::Ones(1, 4);
  CHECK_THROWS_AS(stack(bin, 0, 4), InvalidConfig);
  CHECK_THROWS_AS(stack(bin, 5, 4), InvalidConfig);
  CHECK_THROWS_AS(stack(Eigen::MatrixXcd(1, 0), 1, 2), InvalidInput);
}

TEST_CASE("stacked dim examples: M=2 -> 18, M=8 -> 72 at tau=4, L_h=12") {
  Rng rng(3);
  CHECK(stack(oracles::random_cgaussian(rng, 2, 20), 4, 12).data.rows() == 18);
  CHECK(stack(oracles::random_cgaussian(rng, 8, 20), 4, 12).data.rows() == 72);
}

TEST_CASE("init_weights closed forms") {
  BeamformerConfig cfg = small_cfg();
  Eigen::MatrixXcd bin(2, 1);
  bin(0, 0) = complex<double>(3.0, 0.0);
  bin(1, 0) = complex<double>(0.0, 4.0);

  SUBCASE("multi-channel, p = 0: w = M / ||y||^2") {
    cfg.shape = 0.0;
    cfg.init = InitScheme::kMultiChannel;
    PowerWeights w = init_weights(bin, cfg);
    CHECK(w.w[0] == doctest::Approx(2.0 / 25.0).epsilon(1e-12));
  }
  SUBCASE("single-channel, p = 0.5: w = 1 / |y_ref|^{1.5}") {
    cfg.shape = 0.5;
    cfg.init = InitScheme::kSingleChannel;
    PowerWeights w = init_weights(bin, cfg);
    CHECK(w.w[0] == doctest::Approx(std::pow(3.0, -1.5)).epsilon(1e-12));
  }
  SUBCASE("p = 2 kills the magnitude dependence") {
    cfg.shape = 2.0;
    cfg.init = InitScheme::kSingleChannel;
    CHECK(init_weights(bin, cfg).w[0] == 1.0);
    cfg.init = InitScheme::kMultiChannel;
    CHECK(init_weights(bin, cfg).w[0] == 2.0);
  }
}

TEST_CASE("update_weights closed forms") {
  BeamformerConfig cfg = small_cfg();
  EnhancedSpectrum z;
  z.z = Eigen::VectorXcd(2);
  z.z << complex<double>(4.0, 0.0), complex<double>(0.0, 1.0);

  cfg.shape = 0.5;  // w = |z|^{-1.5}
  PowerWeights w = update_weights(z, cfg, 1e-12);
  CHECK(w.w[0] == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(w.w[1] == doctest::Approx(1.0).epsilon(1e-12));

  cfg.shape = 2.0;
  w = update_weights(z, cfg, 1e-12);
  CHECK(w.w[0] == 1.0);
  CHECK(w.w[1] == 1.0);

  // floor engages on silence
  z.z[0] = 0.0;
  cfg.shape = 0.0;
  w = update_weights(z, cfg, 1e-3);
  CHECK(w.w[0] == doctest::Approx(1e6).epsilon(1e-12));
}

TEST_CASE("weight_floor_abs: relative to reference RMS, tiny fallback on silence") {
  BeamformerConfig cfg = small_cfg();
  Eigen::MatrixXcd bin = Eigen::MatrixXcd::Zero(1, 8);
  CHECK(weight_floor_abs(bin, cfg) == 1e-150);
  bin.setConstant(complex<double>(0.0, 2.0));
  CHECK(weight_floor_abs(bin, cfg) == doctest::Approx(2e-8).epsilon(1e-12));
}

TEST_CASE("wpd_solve: identity covariance returns v / ||v||^2") {
  const int dim = 6;
  StackedFrames s;
  s.data = std::sqrt(static_cast<double>(dim)) *
           Eigen::MatrixXcd::Identity(dim, dim);
  s.num_channels = dim;
  s.delay = 1;
  s.filter_len = 1;
  PowerWeights w{Eigen::VectorXd::Ones(dim)};

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
  e1[0] = 1.0;
  ConvFilter f = wpd_solve(s, w, e1);
  CHECK((f.taps - e1).norm() <= 1e-9);

  Rng rng(4);
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, dim, 1).col(0);
  f = wpd_solve(s, w, v);
  CHECK((f.taps - v / v.squaredNorm()).norm() <= 1e-9 * v.norm());
}

TEST_CASE("wpd_solve matches the bordered-KKT oracle") {
  for (std::uint64_t seed : {10, 11, 12, 13}) {
    Rng rng(seed);
    const int channels = 2, frames = 50;
    Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, channels, frames);
    StackedFrames s = stack(bin, 2, 4);  // D = 6
    Eigen::VectorXd w(frames);
    for (int t = 0; t < frames; ++t) w[t] = 0.1 + rng.uniform();
    Eigen::VectorXcd v = oracles::random_cgaussian(rng, 6, 1).col(0);

    ConvFilter mine = wpd_solve(s, PowerWeights{w}, v);
    Eigen::VectorXcd ref = oracles::kkt_mpdr(s.data, w, v, 1e-10);
    CHECK((mine.taps - ref).norm() <= 1e-8 * ref.norm());
    CHECK(std::abs(mine.taps.dot(v) - complex<double>(1.0)) <= 1e-12);
  }
}

TEST_CASE("wpd_solve flags a degenerate constraint") {
  StackedFrames s;
  s.data = 1e8 * Eigen::MatrixXcd::Identity(4, 4);
  s.num_channels = 4;
  s.delay = 1;
  s.filter_len = 1;
  PowerWeights w{Eigen::VectorXd::Ones(4)};
  // v^H R^{-1} v ~ 1e-2 * 1e-16 = 1e-18 < 1e-14
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[0] = 1e-1;
  CHECK_THROWS_AS(wpd_solve(s, w, v), DegenerateConstraint);
  CHECK_THROWS_AS(wpd_solve(s, w, Eigen::VectorXcd::Zero(4)),
                  DegenerateConstraint);
}

TEST_CASE("run_lp_wpd: exact recovery on a single-tap scene, every p") {
  // y_t = v s_t with a sparse pulse source: the weighted stacked covariance
  // is block diagonal, the history blocks get exactly zero taps, and
  // z = v_m s_t up to the diagonal loading.
  Rng rng(20);
  const int channels = 2, frames = 400, ref = 0;
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, channels, 1).col(0);
  Eigen::VectorXcd s = pulse_source(rng, frames, 14);
  Eigen::MatrixXcd bin = v * s.transpose();
  Eigen::VectorXcd d_ref = v[ref] * s;

  for (double p : {0.0, 0.5, 1.0, 2.0}) {
    for (InitScheme init : {InitScheme::kSingleChannel, InitScheme::kMultiChannel}) {
      BeamformerConfig cfg;
      cfg.prediction_delay = 4;
      cfg.filter_len = 12;
      cfg.shape = p;
      cfg.iterations = 3;
      cfg.init = init;
      cfg.ref_mic = ref;
      BinResult res = run_lp_wpd(bin, rtf_from(v, ref), cfg,
                                 WeightPath::kAuto, true);
      for (const auto& z : res.diagnostics.iterates) {
        CHECK((z - d_ref).norm() <= 1e-6 * d_ref.norm());
      }
      // the history taps are exactly zero up to loading
      CHECK(res.filter.taps.tail(16).cwiseAbs().maxCoeff() <= 1e-8);
    }
  }
}

TEST_CASE("run_lp_wpd: p = 0 variance path == IRLS exponent-2 path") {
  for (std::uint64_t seed : {30, 31, 32}) {
    Rng rng(seed);
    const int channels = 2, frames = 80;
    Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, channels, frames);
    Eigen::VectorXcd v = oracles::random_cgaussian(rng, channels, 1).col(0);

    BeamformerConfig cfg = small_cfg();
    cfg.shape = 0.0;
    cfg.iterations = 10;
    BinResult a = run_lp_wpd(bin, rtf_from(v, 0), cfg, WeightPath::kVariance, true);
    BinResult b = run_lp_wpd(bin, rtf_from(v, 0), cfg, WeightPath::kIrls, true);
    REQUIRE(a.diagnostics.filter_iterates.size() == 10);
    for (std::size_t k = 0; k < 10; ++k) {
      const auto& fa = a.diagnostics.filter_iterates[k];
      const auto& fb = b.diagnostics.filter_iterates[k];
      CHECK((fa - fb).norm() <= 1e-9 * fa.norm());
    }
  }
}

TEST_CASE("run_lp_wpd: constraint holds after every iteration") {
  Rng rng(40);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 2, 60);
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, 2, 1).col(0);
  BeamformerConfig cfg = small_cfg();
  cfg.shape = 0.5;
  cfg.iterations = 6;
  BinResult res = run_lp_wpd(bin, rtf_from(v, 0), cfg);
  REQUIRE(res.diagnostics.per_iteration.size() == 6);
  for (const auto& it : res.diagnostics.per_iteration) {
    CHECK(it.constraint_residual <= 1e-10);
  }
}

TEST_CASE("run_lp_wpd: lp cost is non-increasing (within slack)") {
  Rng rng(41);
  // reverberant-ish synthetic bin: source convolved with a decaying tail
  const int channels = 2, frames = 200;
  Eigen::VectorXcd s(frames);
  for (int t = 0; t < frames; ++t) {
    s[t] = rng.uniform() < 0.4 ? rng.cgaussian() : complex<double>(0.0);
  }
  Eigen::MatrixXcd taps = oracles::random_cgaussian(rng, channels, 8);
  for (int l = 0; l < 8; ++l) taps.col(l) *= std::pow(0.6, l);
  Eigen::MatrixXcd bin = Eigen::MatrixXcd::Zero(channels, frames);
  for (int t = 0; t < frames; ++t) {
    for (int l = 0; l <= std::min(7, t); ++l) bin.col(t) += taps.col(l) * s[t - l];
  }

  BeamformerConfig cfg;
  cfg.prediction_delay = 2;
  cfg.filter_len = 6;
  cfg.shape = 0.5;
  cfg.iterations = 8;
  BinResult res = run_lp_wpd(bin, rtf_from(taps.col(0), 0), cfg);
  for (std::size_t k = 1; k < res.diagnostics.per_iteration.size(); ++k) {
    CHECK(res.diagnostics.per_iteration[k].lp_cost <=
          res.diagnostics.per_iteration[k - 1].lp_cost + 1e-6);
  }
}

TEST_CASE("run_lp_wpd: p = 2 output scales exactly with power-of-two gain") {
  Rng rng(42);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 2, 50);
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, 2, 1).col(0);
  BeamformerConfig cfg = small_cfg();
  cfg.shape = 2.0;
  cfg.iterations = 4;
  BinResult base = run_lp_wpd(bin, rtf_from(v, 0), cfg);
  BinResult scaled = run_lp_wpd(Eigen::MatrixXcd(2.0 * bin), rtf_from(v, 0), cfg);
  CHECK((scaled.enhanced.z - 2.0 * base.enhanced.z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("run_lp_wpd: general p output scales to rounding with any gain") {
  Rng rng(43);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 2, 50);
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, 2, 1).col(0);
  BeamformerConfig cfg = small_cfg();
  cfg.shape = 0.5;
  cfg.iterations = 5;
  const double gain = 3.7;
  BinResult base = run_lp_wpd(bin, rtf_from(v, 0), cfg);
  BinResult scaled = run_lp_wpd(Eigen::MatrixXcd(gain * bin), rtf_from(v, 0), cfg);
  CHECK((scaled.enhanced.z - gain * base.enhanced.z).norm() <=
        1e-9 * base.enhanced.z.norm() * gain);
}

TEST_CASE("run_lp_wpd: T < D sets the underdetermined flag") {
  Rng rng(44);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 2, 5);  // D = 6 > 5
  Eigen::VectorXcd v = oracles::random_cgaussian(rng, 2, 1).col(0);
  BeamformerConfig cfg = small_cfg();
  cfg.iterations = 1;
  BinResult res = run_lp_wpd(bin, rtf_from(v, 0), cfg);
  CHECK(res.diagnostics.underdetermined);
}

TEST_CASE("run_lp_wpd validates inputs") {
  Rng rng(45);
  Eigen::MatrixXcd bin = oracles::random_cgaussian(rng, 2, 20);
  BeamformerConfig cfg = small_cfg();
  RtfVector bad;
  bad.v_tilde = Eigen::VectorXcd::Ones(3);  // wrong channel count
  bad.ref_mic = 0;
  CHECK_THROWS_AS(run_lp_wpd(bin, bad, cfg), InvalidInput);

  BeamformerConfig broken = cfg;
  broken.shape = 2.5;
  RtfVector ok;
  ok.v_tilde = Eigen::VectorXcd::Ones(2);
  CHECK_THROWS_AS(run_lp_wpd(bin, ok, broken), InvalidConfig);
  broken = cfg;
  broken.ref_mic = 7;
  CHECK_THROWS_AS(run_lp_wpd(bin, ok, broken), InvalidInput);
}

// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_PIPELINE_H_
#define LPWPD_PIPELINE_H_

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "lpwpd/beamformer.h"
#include "lpwpd/metrics.h"
#include "lpwpd/rtf.h"
#include "lpwpd/stft.h"

namespace lpwpd {

struct PipelineConfig {
  AnalysisConfig analysis;
  BeamformerConfig beamformer;
  NoiseMask mask;
  int jobs = 0;  // <= 0 picks hardware concurrency
};

struct IterationAggregate {
  double lp_cost_mean = 0.0;
  double constraint_residual_max = 0.0;
};

struct PipelineResult {
  Eigen::MatrixXd enhanced;  // 1 x N, reference-channel estimate
  int num_channels = 0;
  int num_frames = 0;
  int num_bins = 0;
  int stacked_dim = 0;
  // Bins that fell back to the unprocessed reference channel. Soft =
  // degenerate data (not positive definite, degenerate reference or
  // constraint, empty mask); hard = solver non-convergence or unexpected.
  int soft_failures = 0;
  int hard_failures = 0;
  std::vector<std::string> warnings;
  std::vector<IterationAggregate> iterations;  // index 0 = iteration 1
  double wall_analyze_sec = 0.0;
  double wall_solve_sec = 0.0;
  double wall_synthesize_sec = 0.0;
};

// Full per-frequency chain on one utterance: analyze -> per bin
// {noise cov, RTF, lp-WPD} -> assemble reference-channel estimate ->
// synthesize. audio is channels x samples with M >= 2. Bins are processed
// in parallel; assembly order is fixed so results do not depend on the
// parallelism degree.
PipelineResult enhance_signal(const Eigen::MatrixXd& audio,
                              const PipelineConfig& cfg);

struct SweepCell {
  std::string utterance;
  double shape = 0.0;
  InitScheme init = InitScheme::kMultiChannel;
  int iteration = 0;  // 1-based
  double fwssnr_noisy = 0.0;
  double fwssnr_enh = 0.0;
  double delta_fwssnr = 0.0;
  double seg_snr_noisy = 0.0;
  double seg_snr_enh = 0.0;
  double delta_seg_snr = 0.0;
  double constraint_residual_max = 0.0;
  double lp_cost_final = 0.0;
};

// Cartesian {shape} x {init} x {1..iterations}; iteration-k rows come from
// z snapshots of one iterations-long run per (shape, init), not re-runs.
// reference is the clean signal the metrics score against.
std::vector<SweepCell> sweep_signal(const Eigen::MatrixXd& audio,
                                    const Eigen::VectorXd& reference,
                                    const PipelineConfig& base,
                                    const std::vector<double>& shapes,
                                    const std::vector<InitScheme>& inits,
                                    const std::string& utterance);

// --- file-level drivers (used by the CLI, testable without a subprocess) ---

struct EnhanceJob {
  std::vector<std::string> inputs;  // one multichannel file or channel set
  std::string output;
  std::string reference;    // optional clean WAV
  std::string record_path;  // optional JSON run record
  PipelineConfig cfg;
  std::uint64_t seed = 0;   // snapshotted into the record
};

struct EnhanceOutcome {
  PipelineResult result;
  std::optional<MetricReport> metrics_noisy;
  std::optional<MetricReport> metrics_enhanced;
  std::string record_json;
};

// channels x samples from one multichannel WAV or a per-channel set
// (channel order = order given); rates and lengths must agree with each
// other and with cfg.sample_rate.
Eigen::MatrixXd read_input_set(const std::vector<std::string>& paths,
                               const AnalysisConfig& cfg);

EnhanceOutcome run_enhance_job(const EnhanceJob& job);

struct SweepJob {
  EnhanceJob base;                  // inputs/reference/cfg reused
  std::vector<double> shapes;
  std::vector<InitScheme> inits;
  std::string utterance;            // CSV label
  std::string out_csv;
};

// key = value lines, '#' comments, comma-separated lists, repeated keys
// append. Keys: in, ref, utterance, out_csv, p, init, iters, tau, lh,
// ref_mic (1-based), noise_head_ms, noise_tail_ms, jobs, seed, frame_len,
// hop, sample_rate.
SweepJob parse_sweep_config(const std::string& path);

std::vector<SweepCell> run_sweep_job(const SweepJob& job);

void write_sweep_csv(const std::string& path, const std::vector<SweepCell>& rows);
std::vector<SweepCell> read_sweep_csv(const std::string& path);

struct ReportRow {
  double shape = 0.0;
  InitScheme init = InitScheme::kMultiChannel;
  int iteration = 0;
  int utterances = 0;
  double mean_delta_fwssnr = 0.0;
  double mean_delta_seg_snr = 0.0;
};

// Equal weight per utterance row, grouped by (shape, init, iteration).
std::vector<ReportRow> aggregate_report(const std::vector<SweepCell>& rows);

const char* init_name(InitScheme init);
InitScheme init_from_name(const std::string& name);

}  // namespace lpwpd

#endif  // LPWPD_PIPELINE_H_

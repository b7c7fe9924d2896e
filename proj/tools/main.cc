// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lpwpd/errors.h"
#include "lpwpd/pipeline.h"

namespace {

void print_warnings(const lpwpd::PipelineResult& res) {
  for (const auto& w : res.warnings) {
    std::fprintf(stderr, "warning: %s\n", w.c_str());
  }
}

int do_enhance(lpwpd::EnhanceJob& job, const std::string& init,
               int ref_mic_1based) {
  job.cfg.beamformer.init = lpwpd::init_from_name(init);
  job.cfg.beamformer.ref_mic = ref_mic_1based - 1;
  lpwpd::EnhanceOutcome out = lpwpd::run_enhance_job(job);
  print_warnings(out.result);

  std::printf("enhanced %d channels x %d frames (%d bins, stacked dim %d)\n",
              out.result.num_channels, out.result.num_frames,
              out.result.num_bins, out.result.stacked_dim);
  if (out.metrics_noisy && out.metrics_enhanced) {
    std::printf("fwssnr %.4f -> %.4f dB (delta %+.4f)\n",
                out.metrics_noisy->fwssnr, out.metrics_enhanced->fwssnr,
                out.metrics_enhanced->fwssnr - out.metrics_noisy->fwssnr);
    std::printf("seg_snr %.4f -> %.4f dB (delta %+.4f)\n",
                out.metrics_noisy->seg_snr, out.metrics_enhanced->seg_snr,
                out.metrics_enhanced->seg_snr - out.metrics_noisy->seg_snr);
  }
  std::printf("wrote %s\n", job.output.c_str());
  if (out.result.hard_failures == out.result.num_bins) return 2;
  return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_csv) {
  lpwpd::SweepJob job = lpwpd::parse_sweep_config(config_path);
  if (!out_csv.empty()) job.out_csv = out_csv;
  if (job.out_csv.empty()) {
    throw lpwpd::InvalidConfig("sweep: --out-csv or config key out_csv required");
  }
  std::vector<lpwpd::SweepCell> rows = lpwpd::run_sweep_job(job);
  std::printf("wrote %zu rows to %s\n", rows.size(), job.out_csv.c_str());
  return 0;
}

int do_report(const std::vector<std::string>& csvs) {
  std::vector<lpwpd::SweepCell> rows;
  for (const auto& path : csvs) {
    std::vector<lpwpd::SweepCell> part = lpwpd::read_sweep_csv(path);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  std::vector<lpwpd::ReportRow> table = lpwpd::aggregate_report(rows);
  std::printf("%6s %5s %5s %6s %14s %14s\n", "p", "init", "iter", "rows",
              "d_fwssnr[dB]", "d_seg_snr[dB]");
  for (const auto& r : table) {
    std::printf("%6g %5s %5d %6d %14.4f %14.4f\n", r.shape,
                lpwpd::init_name(r.init), r.iteration, r.utterances,
                r.mean_delta_fwssnr, r.mean_delta_seg_snr);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lp-norm convolutional beamformer for joint dereverberation "
               "and noise reduction"};
  app.require_subcommand(1);

  lpwpd::EnhanceJob job;
  std::string init = "mc";
  int ref_mic = 1;
  double sample_rate = 16000.0;

  CLI::App* enh = app.add_subcommand("enhance", "Enhance one utterance");
  enh->add_option("--in", job.inputs,
                  "Input WAV (multichannel) or per-channel WAV set")
      ->required();
  enh->add_option("--out", job.output, "Output WAV path")->required();
  enh->add_option("--ref", job.reference, "Clean reference WAV for metrics");
  enh->add_option("--p", job.cfg.beamformer.shape,
                  "Shape parameter in [0,2]; 0 = conventional path")
      ->capture_default_str();
  enh->add_option("--iters", job.cfg.beamformer.iterations, "Reweighting iterations")
      ->capture_default_str();
  enh->add_option("--init", init, "First-iteration weights: sc or mc")
      ->capture_default_str();
  enh->add_option("--tau", job.cfg.beamformer.prediction_delay,
                  "Prediction delay in frames")
      ->capture_default_str();
  enh->add_option("--lh", job.cfg.beamformer.filter_len, "Filter length in frames")
      ->capture_default_str();
  enh->add_option("--ref-mic", ref_mic, "Reference microphone (1-based)")
      ->capture_default_str();
  enh->add_option("--noise-head-ms", job.cfg.mask.head_ms,
                  "Noise-only context at the start, ms")
      ->capture_default_str();
  enh->add_option("--noise-tail-ms", job.cfg.mask.tail_ms,
                  "Noise-only context at the end, ms")
      ->capture_default_str();
  enh->add_option("--jobs", job.cfg.jobs, "Worker threads (0 = all cores)")
      ->capture_default_str();
  enh->add_option("--record", job.record_path, "Write a JSON run record here");
  enh->add_option("--seed", job.seed, "Seed snapshotted into the record")
      ->capture_default_str();
  enh->add_option("--sample-rate", sample_rate, "Expected input rate, Hz")
      ->capture_default_str();

  std::string sweep_config, sweep_csv;
  CLI::App* swp = app.add_subcommand(
      "sweep", "Grid over p/init with per-iteration metrics, CSV out");
  swp->add_option("--config", sweep_config, "key = value sweep description")
      ->required();
  swp->add_option("--out-csv", sweep_csv, "CSV output path");

  std::vector<std::string> report_csvs;
  CLI::App* rep = app.add_subcommand("report", "Aggregate sweep CSVs");
  rep->add_option("--csv", report_csvs, "CSV files from sweep")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (enh->parsed()) {
      job.cfg.analysis.sample_rate = sample_rate;
      return do_enhance(job, init, ref_mic);
    }
    if (swp->parsed()) return do_sweep(sweep_config, sweep_csv);
    if (rep->parsed()) return do_report(report_csvs);
  } catch (const lpwpd::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

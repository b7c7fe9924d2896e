// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/pipeline.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "lpwpd/errors.h"
#include "lpwpd/wav.h"

namespace lpwpd {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-bin outcome. Fallback bins carry the unprocessed reference channel.
struct BinOutput {
  Eigen::VectorXcd z;
  std::vector<IterationStats> stats;
  std::vector<Eigen::VectorXcd> iterates;
  int status = 0;  // 0 ok, 1 soft fallback, 2 hard fallback
  bool underdetermined = false;
  std::string message;
};

BinOutput process_bin(const Eigen::MatrixXcd& bin, const PipelineConfig& cfg,
                      int n_samples, bool capture) {
  BinOutput out;
  try {
    HermitianCov noise_cov =
        estimate_noise_cov(bin, cfg.mask, cfg.analysis, n_samples);
    HermitianCov mix_cov = sample_cov(bin);
    RtfVector rtf = estimate_rtf(mix_cov, noise_cov, cfg.beamformer.ref_mic);
    BinResult res =
        run_lp_wpd(bin, rtf, cfg.beamformer, WeightPath::kAuto, capture);
    out.z = std::move(res.enhanced.z);
    out.stats = std::move(res.diagnostics.per_iteration);
    out.iterates = std::move(res.diagnostics.iterates);
    out.underdetermined = res.diagnostics.underdetermined;
    return out;
  } catch (const ConvergenceFailure& e) {
    out.status = 2;
    out.message = e.what();
  } catch (const NotPositiveDefinite& e) {
    out.status = 1;
    out.message = e.what();
  } catch (const DegenerateReference& e) {
    out.status = 1;
    out.message = e.what();
  } catch (const DegenerateConstraint& e) {
    out.status = 1;
    out.message = e.what();
  } catch (const InvalidMask& e) {
    out.status = 1;
    out.message = e.what();
  } catch (const std::exception& e) {
    out.status = 2;
    out.message = e.what();
  }
  out.z = bin.row(cfg.beamformer.ref_mic).transpose();
  if (capture) {
    out.iterates.assign(static_cast<std::size_t>(cfg.beamformer.iterations),
                        out.z);
  }
  return out;
}

std::vector<BinOutput> process_all(const SpectralFrames& frames,
                                   const PipelineConfig& cfg, bool capture) {
  const int num_bins = frames.num_bins();
  std::vector<BinOutput> out(static_cast<std::size_t>(num_bins));
  int jobs = cfg.jobs > 0
                 ? cfg.jobs
                 : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, num_bins));

  std::atomic<int> next{0};
  auto work = [&]() {
    for (;;) {
      const int f = next.fetch_add(1);
      if (f >= num_bins) return;
      out[static_cast<std::size_t>(f)] =
          process_bin(frames.bin(f), cfg, frames.source_samples, capture);
    }
  };
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return out;
}

void validate_pipeline_input(const Eigen::MatrixXd& audio,
                             const PipelineConfig& cfg) {
  cfg.analysis.validate();
  cfg.beamformer.validate();
  if (audio.rows() < 2) {
    throw InvalidInput("pipeline: need at least two channels for the RTF");
  }
  if (cfg.beamformer.ref_mic >= audio.rows()) {
    throw InvalidInput("pipeline: ref_mic out of range");
  }
  if (cfg.mask.head_ms < 0.0 || cfg.mask.tail_ms < 0.0) {
    throw InvalidMask("pipeline: negative noise mask span");
  }
}

void collect_failures(const std::vector<BinOutput>& outs, PipelineResult& res) {
  std::string soft_sample, hard_sample;
  bool underdetermined = false;
  for (const auto& b : outs) {
    if (b.status == 1) {
      ++res.soft_failures;
      if (soft_sample.empty()) soft_sample = b.message;
    } else if (b.status == 2) {
      ++res.hard_failures;
      if (hard_sample.empty()) hard_sample = b.message;
    }
    underdetermined = underdetermined || b.underdetermined;
  }
  if (res.soft_failures > 0) {
    res.warnings.push_back(std::to_string(res.soft_failures) +
                           " bins fell back to the reference channel (" +
                           soft_sample + ")");
  }
  if (res.hard_failures > 0) {
    res.warnings.push_back(std::to_string(res.hard_failures) +
                           " bins hard-failed (" + hard_sample + ")");
  }
  if (underdetermined) {
    res.warnings.push_back(
        "frame count below stacked dim; weighted covariance is rank deficient");
  }
}

std::vector<IterationAggregate> aggregate_iterations(
    const std::vector<BinOutput>& outs, int iterations) {
  int ok = 0;
  for (const auto& b : outs) ok += b.status == 0 ? 1 : 0;
  if (ok == 0) return {};
  std::vector<IterationAggregate> agg(static_cast<std::size_t>(iterations));
  for (const auto& b : outs) {
    if (b.status != 0) continue;
    for (std::size_t k = 0; k < b.stats.size() && k < agg.size(); ++k) {
      agg[k].lp_cost_mean += b.stats[k].lp_cost;
      agg[k].constraint_residual_max = std::max(
          agg[k].constraint_residual_max, b.stats[k].constraint_residual);
    }
  }
  for (auto& a : agg) a.lp_cost_mean /= ok;
  return agg;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace

const char* init_name(InitScheme init) {
  return init == InitScheme::kSingleChannel ? "sc" : "mc";
}

InitScheme init_from_name(const std::string& name) {
  if (name == "sc") return InitScheme::kSingleChannel;
  if (name == "mc") return InitScheme::kMultiChannel;
  throw InvalidConfig("init must be 'sc' or 'mc', got '" + name + "'");
}

PipelineResult enhance_signal(const Eigen::MatrixXd& audio,
                              const PipelineConfig& cfg) {
  validate_pipeline_input(audio, cfg);

  PipelineResult res;
  auto t0 = Clock::now();
  SpectralFrames frames = analyze(audio, cfg.analysis);
  res.wall_analyze_sec = seconds_since(t0);
  res.num_channels = frames.num_channels();
  res.num_frames = frames.num_frames();
  res.num_bins = frames.num_bins();
  res.stacked_dim =
      res.num_channels *
      (cfg.beamformer.filter_len - cfg.beamformer.prediction_delay + 1);

  t0 = Clock::now();
  std::vector<BinOutput> outs = process_all(frames, cfg, false);
  res.wall_solve_sec = seconds_since(t0);

  collect_failures(outs, res);
  res.iterations = aggregate_iterations(outs, cfg.beamformer.iterations);

  SpectralFrames estimate(res.num_bins, 1, res.num_frames);
  estimate.source_samples = frames.source_samples;
  for (int f = 0; f < res.num_bins; ++f) {
    estimate.bin(f).row(0) = outs[static_cast<std::size_t>(f)].z.transpose();
  }
  t0 = Clock::now();
  res.enhanced = synthesize(estimate, cfg.analysis);
  res.wall_synthesize_sec = seconds_since(t0);
  return res;
}

std::vector<SweepCell> sweep_signal(const Eigen::MatrixXd& audio,
                                    const Eigen::VectorXd& reference,
                                    const PipelineConfig& base,
                                    const std::vector<double>& shapes,
                                    const std::vector<InitScheme>& inits,
                                    const std::string& utterance) {
  validate_pipeline_input(audio, base);
  if (shapes.empty() || inits.empty()) {
    throw InvalidConfig("sweep: shape and init lists must be non-empty");
  }
  if (reference.size() != audio.cols()) {
    throw InvalidInput("sweep: reference length must match the input");
  }

  SpectralFrames frames = analyze(audio, base.analysis);
  const int num_bins = frames.num_bins();
  const int num_frames = frames.num_frames();
  const Eigen::VectorXd noisy =
      audio.row(base.beamformer.ref_mic).transpose();
  const MetricReport noisy_metrics =
      compute_metrics(reference, noisy, base.analysis);

  std::vector<SweepCell> rows;
  rows.reserve(shapes.size() * inits.size() *
               static_cast<std::size_t>(base.beamformer.iterations));
  for (double shape : shapes) {
    for (InitScheme init : inits) {
      PipelineConfig cfg = base;
      cfg.beamformer.shape = shape;
      cfg.beamformer.init = init;
      cfg.beamformer.validate();
      std::vector<BinOutput> outs = process_all(frames, cfg, true);
      std::vector<IterationAggregate> agg =
          aggregate_iterations(outs, cfg.beamformer.iterations);

      for (int k = 0; k < cfg.beamformer.iterations; ++k) {
        SpectralFrames estimate(num_bins, 1, num_frames);
        estimate.source_samples = frames.source_samples;
        for (int f = 0; f < num_bins; ++f) {
          const auto& b = outs[static_cast<std::size_t>(f)];
          estimate.bin(f).row(0) =
              b.iterates[static_cast<std::size_t>(k)].transpose();
        }
        Eigen::MatrixXd enhanced = synthesize(estimate, cfg.analysis);
        const MetricReport enh_metrics = compute_metrics(
            reference, enhanced.row(0).transpose(), cfg.analysis);

        SweepCell cell;
        cell.utterance = utterance;
        cell.shape = shape;
        cell.init = init;
        cell.iteration = k + 1;
        cell.fwssnr_noisy = noisy_metrics.fwssnr;
        cell.fwssnr_enh = enh_metrics.fwssnr;
        cell.delta_fwssnr = delta(enh_metrics.fwssnr, noisy_metrics.fwssnr);
        cell.seg_snr_noisy = noisy_metrics.seg_snr;
        cell.seg_snr_enh = enh_metrics.seg_snr;
        cell.delta_seg_snr = delta(enh_metrics.seg_snr, noisy_metrics.seg_snr);
        if (static_cast<std::size_t>(k) < agg.size()) {
          cell.constraint_residual_max = agg[static_cast<std::size_t>(k)]
                                             .constraint_residual_max;
          cell.lp_cost_final = agg[static_cast<std::size_t>(k)].lp_cost_mean;
        }
        rows.push_back(std::move(cell));
      }
    }
  }
  return rows;
}

Eigen::MatrixXd read_input_set(const std::vector<std::string>& paths,
                               const AnalysisConfig& cfg) {
  if (paths.empty()) throw InvalidInput("no input files given");
  std::vector<WavData> files;
  files.reserve(paths.size());
  Eigen::Index total_channels = 0;
  for (const auto& p : paths) {
    files.push_back(read_wav(p));
    const WavData& w = files.back();
    if (w.sample_rate != cfg.sample_rate) {
      throw InvalidInput("sample rate of " + p +
                         " does not match the configured rate");
    }
    if (w.samples.cols() != files.front().samples.cols()) {
      throw InvalidInput("input files differ in length: " + p);
    }
    total_channels += w.samples.rows();
  }
  Eigen::MatrixXd audio(total_channels, files.front().samples.cols());
  Eigen::Index row = 0;
  for (const auto& w : files) {
    audio.middleRows(row, w.samples.rows()) = w.samples;
    row += w.samples.rows();
  }
  return audio;
}

namespace {

nlohmann::json record_json(const EnhanceJob& job, const PipelineResult& res,
                           const std::optional<MetricReport>& noisy,
                           const std::optional<MetricReport>& enhanced) {
  const PipelineConfig& cfg = job.cfg;
  nlohmann::json rec;
  rec["config"] = {
      {"inputs", job.inputs},
      {"output", job.output},
      {"reference", job.reference},
      {"seed", job.seed},
      {"jobs", cfg.jobs},
      {"analysis",
       {{"frame_len", cfg.analysis.frame_len},
        {"hop", cfg.analysis.hop},
        {"window", "sqrt_hann"},
        {"sample_rate", cfg.analysis.sample_rate}}},
      {"beamformer",
       {{"p", cfg.beamformer.shape},
        {"iterations", cfg.beamformer.iterations},
        {"init", init_name(cfg.beamformer.init)},
        {"prediction_delay", cfg.beamformer.prediction_delay},
        {"filter_len", cfg.beamformer.filter_len},
        {"ref_mic", cfg.beamformer.ref_mic},
        {"weight_floor", cfg.beamformer.weight_floor}}},
      {"mask",
       {{"head_ms", cfg.mask.head_ms}, {"tail_ms", cfg.mask.tail_ms}}}};
  rec["input"] = {{"channels", res.num_channels},
                  {"samples", res.enhanced.cols()},
                  {"frames", res.num_frames},
                  {"bins", res.num_bins}};
  rec["stacked_dim"] = res.stacked_dim;
  rec["failures"] = {{"soft", res.soft_failures}, {"hard", res.hard_failures}};
  rec["warnings"] = res.warnings;
  auto iters = nlohmann::json::array();
  for (const auto& a : res.iterations) {
    iters.push_back({{"lp_cost_mean", a.lp_cost_mean},
                     {"constraint_residual_max", a.constraint_residual_max}});
  }
  rec["iterations"] = std::move(iters);
  if (noisy && enhanced) {
    rec["metrics"] = {
        {"noisy", {{"fwssnr", noisy->fwssnr}, {"seg_snr", noisy->seg_snr}}},
        {"enhanced",
         {{"fwssnr", enhanced->fwssnr}, {"seg_snr", enhanced->seg_snr}}},
        {"delta_fwssnr", delta(enhanced->fwssnr, noisy->fwssnr)},
        {"delta_seg_snr", delta(enhanced->seg_snr, noisy->seg_snr)}};
  }
  rec["timing_sec"] = {{"analyze", res.wall_analyze_sec},
                       {"solve", res.wall_solve_sec},
                       {"synthesize", res.wall_synthesize_sec}};
  return rec;
}

Eigen::VectorXd read_reference(const std::string& path,
                               const AnalysisConfig& cfg,
                               Eigen::Index samples) {
  WavData ref = read_wav(path);
  if (ref.sample_rate != cfg.sample_rate) {
    throw InvalidInput("reference sample rate does not match configuration");
  }
  if (ref.samples.cols() != samples) {
    throw InvalidInput("reference length does not match the input");
  }
  return ref.samples.row(0).transpose();
}

}  // namespace

EnhanceOutcome run_enhance_job(const EnhanceJob& job) {
  if (job.output.empty()) throw InvalidInput("enhance: output path required");
  Eigen::MatrixXd audio = read_input_set(job.inputs, job.cfg.analysis);

  EnhanceOutcome out;
  out.result = enhance_signal(audio, job.cfg);
  write_wav(job.output, out.result.enhanced, job.cfg.analysis.sample_rate);

  if (!job.reference.empty()) {
    Eigen::VectorXd reference =
        read_reference(job.reference, job.cfg.analysis, audio.cols());
    out.metrics_noisy = compute_metrics(
        reference, audio.row(job.cfg.beamformer.ref_mic).transpose(),
        job.cfg.analysis);
    out.metrics_enhanced = compute_metrics(
        reference, out.result.enhanced.row(0).transpose(), job.cfg.analysis);
  }

  nlohmann::json rec =
      record_json(job, out.result, out.metrics_noisy, out.metrics_enhanced);
  out.record_json = rec.dump(2);
  if (!job.record_path.empty()) {
    std::ofstream f(job.record_path, std::ios::trunc);
    if (!f) throw InvalidInput("cannot write record: " + job.record_path);
    f << out.record_json << '\n';
  }
  return out;
}

SweepJob parse_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open sweep config: " + path);

  std::map<std::string, std::vector<std::string>> kv;
  std::string line;
  auto trim = [](std::string s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidConfig("sweep config line " + std::to_string(lineno) +
                          ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw InvalidConfig("sweep config line " + std::to_string(lineno) +
                          ": empty key");
    }
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) kv[key].push_back(item);
    }
  }

  auto to_double = [](const std::string& s) {
    try {
      std::size_t used = 0;
      double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InvalidConfig("sweep config: bad number '" + s + "'");
    }
  };
  auto to_int = [&](const std::string& s) {
    double v = to_double(s);
    int i = static_cast<int>(v);
    if (static_cast<double>(i) != v) {
      throw InvalidConfig("sweep config: expected integer, got '" + s + "'");
    }
    return i;
  };
  auto single = [&](const std::string& key) -> const std::string& {
    const auto& vals = kv.at(key);
    if (vals.size() != 1) {
      throw InvalidConfig("sweep config: key '" + key +
                          "' must have exactly one value");
    }
    return vals.front();
  };

  SweepJob job;
  static const char* known[] = {"in",          "ref",        "utterance",
                                "out_csv",     "p",          "init",
                                "iters",       "tau",        "lh",
                                "ref_mic",     "noise_head_ms",
                                "noise_tail_ms", "jobs",     "seed",
                                "frame_len",   "hop",        "sample_rate"};
  for (const auto& [key, _] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw InvalidConfig("sweep config: unknown key '" + key + "'");
  }
  if (!kv.count("in")) throw InvalidConfig("sweep config: 'in' is required");
  job.base.inputs = kv["in"];
  if (!kv.count("ref")) {
    throw InvalidConfig("sweep config: 'ref' (clean reference) is required");
  }
  job.base.reference = single("ref");
  job.utterance =
      kv.count("utterance") ? single("utterance") : stem_of(job.base.inputs[0]);
  if (kv.count("out_csv")) job.out_csv = single("out_csv");

  job.shapes = {0.5};
  if (kv.count("p")) {
    job.shapes.clear();
    for (const auto& s : kv["p"]) job.shapes.push_back(to_double(s));
  }
  job.inits = {InitScheme::kMultiChannel};
  if (kv.count("init")) {
    job.inits.clear();
    for (const auto& s : kv["init"]) job.inits.push_back(init_from_name(s));
  }

  PipelineConfig& cfg = job.base.cfg;
  if (kv.count("iters")) cfg.beamformer.iterations = to_int(single("iters"));
  if (kv.count("tau")) cfg.beamformer.prediction_delay = to_int(single("tau"));
  if (kv.count("lh")) cfg.beamformer.filter_len = to_int(single("lh"));
  if (kv.count("ref_mic")) {
    cfg.beamformer.ref_mic = to_int(single("ref_mic")) - 1;  // 1-based key
  }
  if (kv.count("noise_head_ms")) cfg.mask.head_ms = to_double(single("noise_head_ms"));
  if (kv.count("noise_tail_ms")) cfg.mask.tail_ms = to_double(single("noise_tail_ms"));
  if (kv.count("jobs")) cfg.jobs = to_int(single("jobs"));
  if (kv.count("seed")) job.base.seed = static_cast<std::uint64_t>(to_double(single("seed")));
  if (kv.count("frame_len")) cfg.analysis.frame_len = to_int(single("frame_len"));
  if (kv.count("hop")) cfg.analysis.hop = to_int(single("hop"));
  if (kv.count("sample_rate")) cfg.analysis.sample_rate = to_double(single("sample_rate"));
  return job;
}

std::vector<SweepCell> run_sweep_job(const SweepJob& job) {
  Eigen::MatrixXd audio = read_input_set(job.base.inputs, job.base.cfg.analysis);
  Eigen::VectorXd reference =
      read_reference(job.base.reference, job.base.cfg.analysis, audio.cols());
  std::vector<SweepCell> rows = sweep_signal(
      audio, reference, job.base.cfg, job.shapes, job.inits, job.utterance);
  if (!job.out_csv.empty()) write_sweep_csv(job.out_csv, rows);
  return rows;
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepCell>& rows) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InvalidInput("cannot write CSV: " + path);
  out << "utterance,p,init,iteration,fwssnr_noisy,fwssnr_enh,delta_fwssnr,"
         "seg_snr_noisy,seg_snr_enh,delta_seg_snr,"
         "constraint_residual_max,lp_cost_final\n";
  for (const auto& r : rows) {
    out << r.utterance << ',' << format_double(r.shape) << ','
        << init_name(r.init) << ',' << r.iteration << ','
        << format_double(r.fwssnr_noisy) << ',' << format_double(r.fwssnr_enh)
        << ',' << format_double(r.delta_fwssnr) << ','
        << format_double(r.seg_snr_noisy) << ','
        << format_double(r.seg_snr_enh) << ','
        << format_double(r.delta_seg_snr) << ','
        << format_double(r.constraint_residual_max) << ','
        << format_double(r.lp_cost_final) << '\n';
  }
  if (!out) throw InvalidInput("CSV write failed: " + path);
}

std::vector<SweepCell> read_sweep_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty CSV: " + path);

  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) cells.push_back(item);
    return cells;
  };
  const std::vector<std::string> header = split(line);
  auto col = [&](const char* name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw InvalidInput("CSV missing column '" + std::string(name) + "': " + path);
  };
  const std::size_t c_utt = col("utterance"), c_p = col("p"),
                    c_init = col("init"), c_iter = col("iteration"),
                    c_fn = col("fwssnr_noisy"), c_fe = col("fwssnr_enh"),
                    c_df = col("delta_fwssnr"), c_sn = col("seg_snr_noisy"),
                    c_se = col("seg_snr_enh"), c_ds = col("delta_seg_snr"),
                    c_cr = col("constraint_residual_max"),
                    c_lc = col("lp_cost_final");

  std::vector<SweepCell> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> cells = split(line);
    if (cells.size() < header.size()) {
      throw InvalidInput("short CSV row in " + path);
    }
    SweepCell r;
    r.utterance = cells[c_utt];
    r.shape = std::stod(cells[c_p]);
    r.init = init_from_name(cells[c_init]);
    r.iteration = std::stoi(cells[c_iter]);
    r.fwssnr_noisy = std::stod(cells[c_fn]);
    r.fwssnr_enh = std::stod(cells[c_fe]);
    r.delta_fwssnr = std::stod(cells[c_df]);
    r.seg_snr_noisy = std::stod(cells[c_sn]);
    r.seg_snr_enh = std::stod(cells[c_se]);
    r.delta_seg_snr = std::stod(cells[c_ds]);
    r.constraint_residual_max = std::stod(cells[c_cr]);
    r.lp_cost_final = std::stod(cells[c_lc]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ReportRow> aggregate_report(const std::vector<SweepCell>& rows) {
  std::map<std::tuple<double, int, int>, ReportRow> groups;
  for (const auto& r : rows) {
    const auto key = std::make_tuple(
        r.shape, r.init == InitScheme::kSingleChannel ? 0 : 1, r.iteration);
    ReportRow& g = groups[key];
    g.shape = r.shape;
    g.init = r.init;
    g.iteration = r.iteration;
    ++g.utterances;
    g.mean_delta_fwssnr += r.delta_fwssnr;
    g.mean_delta_seg_snr += r.delta_seg_snr;
  }
  std::vector<ReportRow> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) {
    g.mean_delta_fwssnr /= g.utterances;
    g.mean_delta_seg_snr /= g.utterances;
    out.push_back(g);
  }
  return out;
}

}  // namespace lpwpd

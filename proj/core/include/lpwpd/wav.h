// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef LPWPD_WAV_H_
#define LPWPD_WAV_H_

#include <string>

#include <Eigen/Dense>

namespace lpwpd {

struct WavData {
  Eigen::MatrixXd samples;  // channels x frames
  double sample_rate = 0.0;
};

enum class WavFormat { kFloat32, kPcm16 };

// RIFF/WAVE reader for PCM16 and IEEE float32 (plain or WAVE_FORMAT_EXTENSIBLE);
// anything else raises InvalidInput. PCM16 is scaled by 1/32768.
WavData read_wav(const std::string& path);

// Little-endian writer; float32 by default (adds the fact chunk), PCM16
// clamps to [-1, 1) and scales by 32768.
void write_wav(const std::string& path, const Eigen::MatrixXd& samples,
               double sample_rate, WavFormat format = WavFormat::kFloat32);

}  // namespace lpwpd

#endif  // LPWPD_WAV_H_

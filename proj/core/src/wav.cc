// Copyright 2026 the lpwpd authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lpwpd/wav.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "lpwpd/errors.h"

namespace lpwpd {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void append_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xFF));
  buf.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
  buf.push_back(static_cast<unsigned char>((v >> 16) & 0xFF));
  buf.push_back(static_cast<unsigned char>((v >> 24) & 0xFF));
}

void append_u16(std::vector<unsigned char>& buf, std::uint16_t v) {
  buf.push_back(static_cast<unsigned char>(v & 0xFF));
  buf.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

void append_tag(std::vector<unsigned char>& buf, const char* tag) {
  buf.insert(buf.end(), tag, tag + 4);
}

}  // namespace

WavData read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("read_wav: cannot open " + path);
  std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (raw.size() < 44 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
      std::memcmp(raw.data() + 8, "WAVE", 4) != 0) {
    throw InvalidInput("read_wav: not a RIFF/WAVE file: " + path);
  }

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;
  bool have_fmt = false;

  std::size_t pos = 12;
  while (pos + 8 <= raw.size()) {
    const char* tag = reinterpret_cast<const char*>(raw.data() + pos);
    const std::uint32_t len = read_u32(raw.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > raw.size()) {
      throw InvalidInput("read_wav: truncated chunk in " + path);
    }
    if (std::memcmp(tag, "fmt ", 4) == 0) {
      if (len < 16) throw InvalidInput("read_wav: short fmt chunk");
      format = read_u16(raw.data() + body);
      channels = read_u16(raw.data() + body + 2);
      rate = read_u32(raw.data() + body + 4);
      bits = read_u16(raw.data() + body + 14);
      if (format == kFormatExtensible) {
        if (len < 40) throw InvalidInput("read_wav: short extensible fmt chunk");
        format = read_u16(raw.data() + body + 24);  // first bytes of SubFormat
      }
      have_fmt = true;
    } else if (std::memcmp(tag, "data", 4) == 0) {
      data = raw.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw InvalidInput("read_wav: missing fmt or data chunk in " + path);
  }
  if (channels < 1 || rate == 0) {
    throw InvalidInput("read_wav: bad fmt fields in " + path);
  }

  int bytes_per_sample = 0;
  if (format == kFormatPcm && bits == 16) {
    bytes_per_sample = 2;
  } else if (format == kFormatFloat && bits == 32) {
    bytes_per_sample = 4;
  } else {
    throw InvalidInput("read_wav: only PCM16 and float32 supported: " + path);
  }

  const std::uint32_t stride = channels * static_cast<std::uint32_t>(bytes_per_sample);
  const std::uint32_t frames = data_len / stride;
  if (frames == 0) throw InvalidInput("read_wav: empty data chunk in " + path);

  WavData out;
  out.sample_rate = static_cast<double>(rate);
  out.samples.resize(channels, frames);
  for (std::uint32_t n = 0; n < frames; ++n) {
    for (std::uint16_t ch = 0; ch < channels; ++ch) {
      const unsigned char* p = data + n * stride + ch * bytes_per_sample;
      if (bytes_per_sample == 2) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        out.samples(ch, n) = static_cast<double>(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        out.samples(ch, n) = static_cast<double>(v);
      }
    }
  }
  if (!out.samples.allFinite()) {
    throw InvalidInput("read_wav: nonfinite samples in " + path);
  }
  return out;
}

void write_wav(const std::string& path, const Eigen::MatrixXd& samples,
               double sample_rate, WavFormat format) {
  const auto channels = static_cast<std::uint16_t>(samples.rows());
  const auto frames = static_cast<std::uint32_t>(samples.cols());
  if (channels < 1 || frames < 1) {
    throw InvalidInput("write_wav: samples must be channels x frames");
  }
  if (!(sample_rate > 0.0)) {
    throw InvalidInput("write_wav: sample_rate must be positive");
  }
  if (!samples.allFinite()) {
    throw InvalidInput("write_wav: samples must be finite");
  }
  const bool as_float = format == WavFormat::kFloat32;
  const std::uint16_t bytes_per_sample = as_float ? 4 : 2;
  const std::uint32_t stride = channels * bytes_per_sample;
  const std::uint32_t data_len = frames * stride;
  const auto rate = static_cast<std::uint32_t>(std::lround(sample_rate));

  std::vector<unsigned char> buf;
  buf.reserve(60 + data_len);
  append_tag(buf, "RIFF");
  append_u32(buf, 0);  // patched below
  append_tag(buf, "WAVE");
  append_tag(buf, "fmt ");
  append_u32(buf, 16);
  append_u16(buf, as_float ? kFormatFloat : kFormatPcm);
  append_u16(buf, channels);
  append_u32(buf, rate);
  append_u32(buf, rate * stride);
  append_u16(buf, static_cast<std::uint16_t>(stride));
  append_u16(buf, static_cast<std::uint16_t>(bytes_per_sample * 8));
  if (as_float) {
    append_tag(buf, "fact");
    append_u32(buf, 4);
    append_u32(buf, frames);
  }
  append_tag(buf, "data");
  append_u32(buf, data_len);

  for (std::uint32_t n = 0; n < frames; ++n) {
    for (std::uint16_t ch = 0; ch < channels; ++ch) {
      const double x = samples(ch, n);
      if (as_float) {
        const auto v = static_cast<float>(x);
        unsigned char b[4];
        std::memcpy(b, &v, 4);
        buf.insert(buf.end(), b, b + 4);
      } else {
        double clamped = std::max(-1.0, std::min(32767.0 / 32768.0, x));
        const auto v = static_cast<std::int16_t>(std::lround(clamped * 32768.0));
        unsigned char b[2];
        std::memcpy(b, &v, 2);
        buf.insert(buf.end(), b, b + 2);
      }
    }
  }
  const auto riff_len = static_cast<std::uint32_t>(buf.size() - 8);
  buf[4] = static_cast<unsigned char>(riff_len & 0xFF);
  buf[5] = static_cast<unsigned char>((riff_len >> 8) & 0xFF);
  buf[6] = static_cast<unsigned char>((riff_len >> 16) & 0xFF);
  buf[7] = static_cast<unsigned char>((riff_len >> 24) & 0xFF);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("write_wav: cannot open " + path);
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw InvalidInput("write_wav: write failed: " + path);
}

}  // namespace lpwpd

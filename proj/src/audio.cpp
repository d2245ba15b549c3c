// Copyright 2026 The aer Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aer/audio.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <numeric>
#include <optional>

#include "aer/errors.hpp"

namespace aer {
namespace {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] | (p[1] << 8)); }

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct FormatInfo {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

FormatInfo parse_fmt(const std::uint8_t* p, std::uint32_t size) {
  if (size < 16) throw DecodeError("fmt chunk: expected at least 16 bytes, got " + std::to_string(size));
  FormatInfo f;
  f.tag = read_u16(p);
  f.channels = read_u16(p + 2);
  f.sample_rate = read_u32(p + 4);
  f.block_align = read_u16(p + 12);
  f.bits = read_u16(p + 14);
  if (f.tag == kFormatExtensible) {
    if (size < 40) throw DecodeError("fmt chunk: WAVE_FORMAT_EXTENSIBLE needs 40 bytes, got " + std::to_string(size));
    // The sub-format GUID starts at offset 24; its first two bytes carry the plain format tag.
    f.tag = read_u16(p + 24);
  }
  return f;
}

float pcm_sample(const std::uint8_t* p, const FormatInfo& f) {
  switch (f.bits) {
    case 16:
      return static_cast<float>(static_cast<std::int16_t>(read_u16(p)) / 32768.0);
    case 24: {
      // Sign-extend through the top byte of a 32-bit word.
      const auto raw = static_cast<std::int32_t>(static_cast<std::uint32_t>(p[0]) << 8 |
                                                 static_cast<std::uint32_t>(p[1]) << 16 |
                                                 static_cast<std::uint32_t>(p[2]) << 24) >> 8;
      return static_cast<float>(raw / 8388608.0);
    }
    case 32:
      return static_cast<float>(static_cast<std::int32_t>(read_u32(p)) / 2147483648.0);
    default:
      throw UnsupportedFormatError("PCM with " + std::to_string(f.bits) + " bits per sample");
  }
}

double kaiser(double x, double beta) {
  // x in [-1, 1]
  const double arg = 1.0 - x * x;
  if (arg <= 0.0) return std::cyl_bessel_i(0.0, 0.0) / std::cyl_bessel_i(0.0, beta);
  return std::cyl_bessel_i(0.0, beta * std::sqrt(arg)) / std::cyl_bessel_i(0.0, beta);
}

double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = M_PI * x;
  return std::sin(px) / px;
}

std::uint64_t integral_rate(double rate) {
  const double r = std::round(rate);
  if (std::abs(rate - r) > 1e-9 * std::max(1.0, rate))
    throw ArgumentError("resample: non-integer sample rate " + std::to_string(rate));
  return static_cast<std::uint64_t>(r);
}

}  // namespace

MultiChannelClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id) {
  if (bytes.size() < 12) throw DecodeError("RIFF header: file shorter than 12 bytes");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0) throw DecodeError("RIFF header: missing 'RIFF' tag");
  if (std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) throw DecodeError("RIFF header: missing 'WAVE' form type");

  std::optional<FormatInfo> fmt;
  const std::uint8_t* data = nullptr;
  std::uint32_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::string id(reinterpret_cast<const char*>(chunk), 4);
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    if (size > bytes.size() - body) {
      throw DecodeError(id + " chunk: declares " + std::to_string(size) + " bytes but only " +
                        std::to_string(bytes.size() - body) + " remain");
    }
    if (id == "fmt ") {
      fmt = parse_fmt(bytes.data() + body, size);
    } else if (id == "data") {
      data = bytes.data() + body;
      data_size = size;
    }
    pos = body + size + (size & 1u);
  }
  if (!fmt) throw DecodeError("fmt chunk: not found");
  if (!data) throw DecodeError("data chunk: not found");

  const FormatInfo& f = *fmt;
  if (f.channels != 1 && f.channels != 2)
    throw UnsupportedFormatError(std::to_string(f.channels) + " channels (only mono and stereo are read)");
  if (f.sample_rate == 0) throw DecodeError("fmt chunk: sample rate is zero");
  const bool is_float = f.tag == kFormatFloat;
  if (f.tag != kFormatPcm && !is_float) throw UnsupportedFormatError("format tag " + std::to_string(f.tag));
  if (is_float && f.bits != 32) throw UnsupportedFormatError("IEEE float with " + std::to_string(f.bits) + " bits");
  if (!is_float && f.bits != 16 && f.bits != 24 && f.bits != 32)
    throw UnsupportedFormatError("PCM with " + std::to_string(f.bits) + " bits per sample");

  const std::size_t bytes_per_sample = f.bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * f.channels;
  if (f.block_align != frame_bytes)
    throw DecodeError("fmt chunk: block align " + std::to_string(f.block_align) + " does not match " +
                      std::to_string(frame_bytes));
  if (data_size % frame_bytes != 0)
    throw DecodeError("data chunk: size " + std::to_string(data_size) + " is not a whole number of frames");
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw EmptyAudioError("data chunk: no samples");

  MultiChannelClip clip;
  clip.sample_rate = f.sample_rate;
  clip.source_id = std::move(source_id);
  clip.channels.assign(f.channels, std::vector<float>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    for (std::size_t c = 0; c < f.channels; ++c) {
      const std::uint8_t* p = data + i * frame_bytes + c * bytes_per_sample;
      if (is_float) {
        float v;
        std::memcpy(&v, p, sizeof v);
        clip.channels[c][i] = v;
      } else {
        clip.channels[c][i] = pcm_sample(p, f);
      }
    }
  }
  return clip;
}

MultiChannelClip read_wav_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_wav(bytes, path.string());
  } catch (const DecodeError& e) {
    throw DecodeError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_wav_pcm16(std::span<const float> samples, std::uint32_t sample_rate) {
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, sample_rate);
  put_u32(out, sample_rate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (float s : samples) {
    const double clamped = std::clamp(static_cast<double>(s), -1.0, 1.0);
    const long q = std::clamp(std::lround(clamped * 32768.0), -32768L, 32767L);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }
  return out;
}

void write_wav_file(const std::filesystem::path& path, std::span<const float> samples,
                    std::uint32_t sample_rate) {
  const auto bytes = encode_wav_pcm16(samples, sample_rate);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to " + path.string());
}

AudioClip to_mono(const MultiChannelClip& clip) {
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.source_id = clip.source_id;
  if (clip.channels.size() == 1) {
    out.samples = clip.channels.front();
    return out;
  }
  const std::size_t n = clip.frames();
  out.samples.resize(n);
  const double inv = 1.0 / static_cast<double>(clip.channels.size());
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (const auto& ch : clip.channels) acc += ch[i];
    out.samples[i] = static_cast<float>(acc * inv);
  }
  return out;
}

AudioClip resample(const AudioClip& clip, double target_rate) {
  if (!(clip.sample_rate > 0.0)) throw ArgumentError("resample: source rate must be positive");
  if (!(target_rate > 0.0)) throw ArgumentError("resample: target rate must be positive");
  const std::uint64_t src = integral_rate(clip.sample_rate);
  const std::uint64_t dst = integral_rate(target_rate);
  if (src == dst) return clip;

  const std::uint64_t g = std::gcd(src, dst);
  const std::uint64_t up = dst / g;    // phases
  const std::uint64_t down = src / g;  // input step per `up` outputs

  constexpr int kTaps = 64;
  constexpr int kHalf = kTaps / 2;
  constexpr double kBeta = 8.0;
  // Cutoff relative to the input Nyquist, pulled in so the Kaiser transition band sits below
  // the narrower of the two Nyquist limits.
  const double cutoff = std::min(1.0, static_cast<double>(dst) / static_cast<double>(src)) * 0.92;

  auto taps_for_phase = [&](std::uint64_t phase, double* taps) {
    const double frac = static_cast<double>(phase) / static_cast<double>(up);
    double sum = 0.0;
    for (int k = 0; k < kTaps; ++k) {
      const double tau = static_cast<double>(k - kHalf + 1) - frac;
      taps[k] = cutoff * sinc(cutoff * tau) * kaiser(tau / kHalf, kBeta);
      sum += taps[k];
    }
    for (int k = 0; k < kTaps; ++k) taps[k] /= sum;
  };

  constexpr std::uint64_t kMaxTablePhases = 4096;
  std::vector<double> table;
  if (up <= kMaxTablePhases) {
    table.resize(up * kTaps);
    for (std::uint64_t p = 0; p < up; ++p) taps_for_phase(p, table.data() + p * kTaps);
  }

  const auto& in = clip.samples;
  const auto n_in = static_cast<std::int64_t>(in.size());
  const auto n_out = static_cast<std::size_t>(
      std::llround(static_cast<double>(in.size()) * static_cast<double>(dst) / static_cast<double>(src)));

  AudioClip out;
  out.sample_rate = static_cast<double>(dst);
  out.source_id = clip.source_id;
  out.samples.resize(n_out);
  std::vector<double> scratch(kTaps);
  for (std::size_t n = 0; n < n_out; ++n) {
    const std::uint64_t num = static_cast<std::uint64_t>(n) * down;
    const auto base = static_cast<std::int64_t>(num / up);
    const std::uint64_t phase = num % up;
    const double* taps;
    if (table.empty()) {
      taps_for_phase(phase, scratch.data());
      taps = scratch.data();
    } else {
      taps = table.data() + phase * kTaps;
    }
    double acc = 0.0;
    for (int k = 0; k < kTaps; ++k) {
      const std::int64_t idx = base + k - kHalf + 1;
      if (idx >= 0 && idx < n_in) acc += taps[k] * in[static_cast<std::size_t>(idx)];
    }
    out.samples[n] = static_cast<float>(acc);
  }
  return out;
}

AudioClip normalize(const AudioClip& clip) {
  float peak = 0.0f;
  for (float s : clip.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0.0f) return clip;
  AudioClip out = clip;
  for (float& s : out.samples) s = s / peak;
  return out;
}

AudioClip load_clip(const std::filesystem::path& path, double target_rate) {
  return normalize(resample(to_mono(read_wav_file(path)), target_rate));
}

}  // namespace aer

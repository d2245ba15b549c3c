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

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace aer {

/// Decoded audio before down-mixing. One vector per channel, all equal length.
struct MultiChannelClip {
  std::vector<std::vector<float>> channels;
  double sample_rate = 0.0;
  std::string source_id;

  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Mono waveform. After normalize() the peak magnitude is exactly 1 (or the clip is silent).
struct AudioClip {
  std::vector<float> samples;
  double sample_rate = 0.0;
  std::string source_id;
};

/// Parses a little-endian RIFF/WAVE image. Reads PCM 16/24/32-bit integer and 32-bit float,
/// one or two channels, including WAVE_FORMAT_EXTENSIBLE wrappers of those encodings.
/// Integer samples are divided by 2^(bits-1), so -32768 maps to exactly -1.
MultiChannelClip decode_wav(std::span<const std::uint8_t> bytes, std::string source_id = {});

MultiChannelClip read_wav_file(const std::filesystem::path& path);

/// 16-bit PCM mono RIFF image; samples are clamped to [-1, 1] and rounded.
std::vector<std::uint8_t> encode_wav_pcm16(std::span<const float> samples, std::uint32_t sample_rate);

void write_wav_file(const std::filesystem::path& path, std::span<const float> samples,
                    std::uint32_t sample_rate);

/// Arithmetic mean across channels.
AudioClip to_mono(const MultiChannelClip& clip);

/// Band-limited rate conversion with a Kaiser-windowed sinc polyphase filter.
/// Output length is round(n * target / source). Returns the input unchanged when rates match.
AudioClip resample(const AudioClip& clip, double target_rate);

/// Divides by the peak magnitude. Silent clips are returned as-is.
AudioClip normalize(const AudioClip& clip);

/// decode -> mono -> resample -> normalize.
AudioClip load_clip(const std::filesystem::path& path, double target_rate = 16000.0);

}  // namespace aer

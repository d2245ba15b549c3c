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

#include "aer/frame_cache.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "aer/errors.hpp"

namespace aer {

static_assert(std::endian::native == std::endian::little, "frame cache I/O assumes a little-endian host");

void FrameSet::append_clip(std::string clip_id, int label, const FeatureMatrix& features) {
  if (dim == 0) dim = features.cols;
  if (features.cols != dim) throw ShapeError("FrameSet: clip '" + clip_id + "' has frame length " +
                                             std::to_string(features.cols) + ", expected " + std::to_string(dim));
  clips.push_back({std::move(clip_id), label, labels.size(), features.rows});
  values.insert(values.end(), features.values.begin(), features.values.end());
  labels.insert(labels.end(), features.rows, label);
}

namespace {

template <typename T>
void put(std::ofstream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::ifstream& in, const char* what) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw DecodeError(std::string("frame cache: truncated ") + what);
  return v;
}

}  // namespace

void write_frame_cache(const std::filesystem::path& path, const FrameSet& frames) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kFrameCacheMagic, sizeof kFrameCacheMagic);
  put<std::uint32_t>(out, kFrameCacheVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(frames.mode));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(frames.dim));
  put<std::uint64_t>(out, frames.size());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(frames.clips.size()));
  for (const auto& c : frames.clips) {
    put<std::uint32_t>(out, static_cast<std::uint32_t>(c.clip_id.size()));
    out.write(c.clip_id.data(), static_cast<std::streamsize>(c.clip_id.size()));
    put<std::int32_t>(out, c.label);
    put<std::uint64_t>(out, c.first);
    put<std::uint64_t>(out, c.count);
  }
  out.write(reinterpret_cast<const char*>(frames.values.data()),
            static_cast<std::streamsize>(frames.values.size() * sizeof(float)));
  if (!out) throw IoError("short write to " + path.string());
}

FrameSet read_frame_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kFrameCacheMagic, sizeof magic) != 0)
    throw DecodeError("frame cache: bad magic in " + path.string());
  const auto version = get<std::uint32_t>(in, "version");
  if (version != kFrameCacheVersion) throw UnsupportedFormatError("frame cache version " + std::to_string(version));
  const auto mode = get<std::uint32_t>(in, "mode");
  if (mode > 3) throw DecodeError("frame cache: unknown feature mode " + std::to_string(mode));

  FrameSet fs;
  fs.mode = static_cast<FeatureMode>(mode);
  fs.dim = get<std::uint32_t>(in, "frame length");
  const auto count = get<std::uint64_t>(in, "frame count");
  const auto clips = get<std::uint32_t>(in, "clip count");
  fs.clips.reserve(clips);
  fs.labels.reserve(count);
  std::uint64_t covered = 0;
  for (std::uint32_t i = 0; i < clips; ++i) {
    ClipSpan c;
    const auto len = get<std::uint32_t>(in, "clip id length");
    c.clip_id.resize(len);
    if (!in.read(c.clip_id.data(), len)) throw DecodeError("frame cache: truncated clip id");
    c.label = get<std::int32_t>(in, "clip label");
    c.first = get<std::uint64_t>(in, "clip offset");
    c.count = get<std::uint64_t>(in, "clip frame count");
    if (c.first != covered) throw DecodeError("frame cache: clip table is not contiguous");
    covered += c.count;
    fs.labels.insert(fs.labels.end(), c.count, c.label);
    fs.clips.push_back(std::move(c));
  }
  if (covered != count) throw DecodeError("frame cache: clip table covers " + std::to_string(covered) +
                                          " frames, header says " + std::to_string(count));
  fs.values.resize(count * fs.dim);
  if (!in.read(reinterpret_cast<char*>(fs.values.data()), static_cast<std::streamsize>(fs.values.size() * sizeof(float))))
    throw DecodeError("frame cache: truncated frame data");
  return fs;
}

}  // namespace aer

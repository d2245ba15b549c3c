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

#include "aer/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace aer {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr char kMagic[8] = {'A', 'E', 'R', 'C', 'K', 'P', 'T', '\n'};

}  // namespace

void save_checkpoint(const std::filesystem::path& path, const Network<float>& net, const nlohmann::json& meta) {
  nlohmann::json header;
  header["version"] = kCheckpointVersion;
  header["network"] = net.spec().to_json();
  header["params"] = nlohmann::json::array();
  for (const auto* p : net.params()) header["params"].push_back({{"name", p->name}, {"shape", p->value.shape()}});
  header["meta"] = meta;
  const std::string text = header.dump();

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(kMagic, sizeof kMagic);
  const std::uint32_t version = kCheckpointVersion;
  const auto len = static_cast<std::uint32_t>(text.size());
  out.write(reinterpret_cast<const char*>(&version), sizeof version);
  out.write(reinterpret_cast<const char*>(&len), sizeof len);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (const auto* p : net.params())
    out.write(reinterpret_cast<const char*>(p->value.data()), static_cast<std::streamsize>(p->value.size() * sizeof(float)));
  if (!out) throw IoError("short write to " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw DecodeError("checkpoint: bad magic in " + path.string());
  std::uint32_t version = 0, len = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!in) throw DecodeError("checkpoint: truncated preamble");
  if (version != kCheckpointVersion) throw UnsupportedFormatError("checkpoint version " + std::to_string(version));
  std::string text(len, '\0');
  if (!in.read(text.data(), len)) throw DecodeError("checkpoint: truncated header");

  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("checkpoint header: ") + e.what());
  }
  Checkpoint ck{Network<float>(NetworkSpec::from_json(header.at("network"))), header.value("meta", nlohmann::json::object())};
  auto params = ck.network.params();
  const auto& recorded = header.at("params");
  if (recorded.size() != params.size())
    throw ShapeError("checkpoint: " + std::to_string(recorded.size()) + " parameter blobs, network has " +
                     std::to_string(params.size()));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto shape = recorded[i].at("shape").get<std::vector<std::size_t>>();
    if (shape != params[i]->value.shape())
      throw ShapeError("checkpoint: parameter '" + params[i]->name + "' shape does not match the network spec");
    if (!in.read(reinterpret_cast<char*>(params[i]->value.data()),
                 static_cast<std::streamsize>(params[i]->value.size() * sizeof(float))))
      throw DecodeError("checkpoint: truncated blob for '" + params[i]->name + "'");
  }
  if (in.peek() != std::char_traits<char>::eof()) throw DecodeError("checkpoint: trailing bytes after last blob");
  return ck;
}

}  // namespace aer

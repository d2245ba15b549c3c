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

#include <filesystem>

#include <json.hpp>

#include "aer/network.hpp"

namespace aer {

// Checkpoint layout:
//
//   char[8]  magic "AERCKPT\n"
//   u32      format version (1), little-endian
//   u32      header length in bytes, little-endian
//   header   UTF-8 JSON: {"version", "network": <NetworkSpec JSON>,
//            "params": [{"name", "shape": [...]}, ...], "meta": {...}}
//   blobs    one little-endian float32 array per entry of "params", same order
//
// Loading rebuilds the network from "network" and rejects any parameter whose recorded shape
// or byte count disagrees with it.
inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  Network<float> network;
  nlohmann::json meta;
};

void save_checkpoint(const std::filesystem::path& path, const Network<float>& net,
                     const nlohmann::json& meta = nlohmann::json::object());

Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace aer

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
#include <optional>
#include <string>
#include <vector>

#include "aer/evaluator.hpp"
#include "aer/frame_set.hpp"
#include "aer/network_spec.hpp"
#include "aer/trainer.hpp"

namespace aer {

/// The preset for `arch` sized to the feature mode, or `custom` after checking that its input
/// length and class count agree with the data. Throws ArgumentError on a mismatch.
NetworkSpec resolve_network(const std::string& arch, FeatureMode mode, std::size_t num_classes,
                            const std::optional<NetworkSpec>& custom = std::nullopt, std::size_t window = 2400);

/// Generator for weight initialization, decorrelated from the training stream of the same seed.
Rng init_rng(std::uint64_t seed);

struct CellSpec {
  std::string arch = "dnn";
  FeatureMode mode = FeatureMode::Freq;
  NetworkSpec network;
  TrainConfig train;
  Voting voting = Voting::Probability;
  /// Record frame-level f-score on the test frames after every epoch.
  bool track_validation = true;
};

struct CellResult {
  std::string arch;
  FeatureMode mode = FeatureMode::Freq;
  std::uint64_t seed = 0;
  EvaluationReport report;
  std::vector<EpochMetrics> curve;
  double seconds = 0.0;
};

/// Initializes, trains and evaluates one network.
CellResult run_cell(const CellSpec& cell, const FrameSet& train, const FrameSet& test,
                    const std::vector<std::string>& class_names, const FitHooks& hooks = {},
                    Network<float>* trained = nullptr);

struct Spread {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Median (mean of the middle pair for even counts) and range. Throws on empty input.
Spread spread(std::vector<double> values);

}  // namespace aer

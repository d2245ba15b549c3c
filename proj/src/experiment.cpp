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

#include "aer/experiment.hpp"

#include <algorithm>
#include <chrono>

#include "aer/errors.hpp"

namespace aer {

NetworkSpec resolve_network(const std::string& arch, FeatureMode mode, std::size_t num_classes,
                            const std::optional<NetworkSpec>& custom, std::size_t window) {
  const std::size_t input = feature_length(mode, window);
  if (!custom) return NetworkSpec::preset(arch, num_classes, input);
  custom->validate();
  if (custom->input_length() != input)
    throw ArgumentError("network input length " + std::to_string(custom->input_length()) + " does not match " +
                        std::string(to_string(mode)) + " features of length " + std::to_string(input));
  if (custom->num_classes() != num_classes)
    throw ArgumentError("network has " + std::to_string(custom->num_classes()) + " outputs but the data has " +
                        std::to_string(num_classes) + " classes");
  return *custom;
}

Rng init_rng(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x696e6974u};
  return Rng(seq);
}

CellResult run_cell(const CellSpec& cell, const FrameSet& train, const FrameSet& test,
                    const std::vector<std::string>& class_names, const FitHooks& hooks, Network<float>* trained) {
  const auto start = std::chrono::steady_clock::now();
  Network<float> net(cell.network);
  Rng rng = init_rng(cell.train.seed);
  net.init_glorot(rng);
  CellResult r;
  r.arch = cell.arch;
  r.mode = cell.mode;
  r.seed = cell.train.seed;
  r.curve = fit(net, train, cell.train, cell.track_validation ? &test : nullptr, hooks).epochs;
  r.report = evaluate(net, test, cell.voting, class_names);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (trained) *trained = std::move(net);
  return r;
}

Spread spread(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("spread: no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double median = n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return {median, values.front(), values.back()};
}

}  // namespace aer

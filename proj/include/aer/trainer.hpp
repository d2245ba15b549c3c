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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aer/frame_set.hpp"
#include "aer/network.hpp"

namespace aer {

enum class LrSchedule {
  Recurring,  // halve every period
  Single,     // halve once, at the end of the first period
};

std::string_view to_string(LrSchedule s);
LrSchedule parse_lr_schedule(std::string_view name);

struct TrainConfig {
  double base_lr = 0.05;
  std::size_t lr_halving_period = 20;
  LrSchedule schedule = LrSchedule::Recurring;
  std::size_t epochs = 100;
  std::size_t batch_size = 256;
  double momentum = 0.9;
  double max_norm_limit = 1.0;
  std::uint64_t seed = 0;

  void validate() const;

  /// 100 epochs, halving every 20.
  static TrainConfig dnn_preset();
  /// 20 epochs, halving every 5.
  static TrainConfig cnn_preset();
  static TrainConfig preset(std::string_view arch);
};

/// base_lr * 0.5^floor(epoch / period) for the recurring schedule.
double lr_at(std::size_t epoch, const TrainConfig& cfg);

/// -ln(max(p[label], 1e-12)).
double cross_entropy(std::span<const double> probs, std::size_t label);

/// Mean cross-entropy over a batch of softmax outputs {B, m}. When grad_logits is given it
/// receives (probs - onehot(label)) / B, the gradient of the mean loss through the softmax.
template <typename T>
double cross_entropy_batch(const Tensor<T>& probs, std::span<const int> labels, Tensor<T>* grad_logits);

/// Momentum buffers, one per parameter, zero-initialized.
template <typename T>
struct OptimizerState {
  std::vector<Tensor<T>> velocity;
  std::size_t epoch = 0;
  std::size_t step = 0;

  explicit OptimizerState(const std::vector<Param<T>*>& params);
};

/// Classical momentum: v <- momentum * v - lr * g; w <- w + v.
template <typename T>
void sgd_momentum_step(const std::vector<Param<T>*>& params, OptimizerState<T>& state, double lr, double momentum);

/// Rescales every incoming-weight row of a constrained parameter whose L2 norm exceeds `limit`
/// back onto the limit.
template <typename T>
void max_norm_project(const std::vector<Param<T>*>& params, double limit);

/// Largest row norm among constrained parameters.
template <typename T>
double max_constrained_norm(const std::vector<const Param<T>*>& params);

struct EpochMetrics {
  std::size_t epoch = 0;
  double lr = 0.0;
  double train_loss = 0.0;
  /// Macro f-score of the training-pass predictions (dropout active) over the epoch.
  double train_frame_fscore = 0.0;
  std::optional<double> val_frame_fscore;
};

struct StepInfo {
  std::size_t epoch = 0;
  std::size_t step = 0;
  double loss = 0.0;
  std::span<const std::size_t> frames;  // training-set indices of the batch
};

struct FitHooks {
  /// After every optimizer step and projection.
  std::function<void(const Network<float>&, const StepInfo&)> on_step;
  /// After every epoch, once metrics are final.
  std::function<void(const Network<float>&, const EpochMetrics&)> on_epoch;
};

struct FitResult {
  std::vector<EpochMetrics> epochs;
  std::size_t steps = 0;
};

/// Mini-batch SGD over shuffled frames. The network must already be initialized; shuffling
/// and dropout draw from a generator seeded with cfg.seed. Throws DivergenceError on a
/// non-finite loss.
FitResult fit(Network<float>& net, const FrameSet& train, const TrainConfig& cfg, const FrameSet* val = nullptr,
              const FitHooks& hooks = {});

/// epoch,lr,train_loss,train_frame_fscore,val_frame_fscore (blank when there is no validation set).
std::string metrics_csv(const std::vector<EpochMetrics>& epochs);

}  // namespace aer

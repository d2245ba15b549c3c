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

#include "aer/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "aer/evaluator.hpp"

namespace aer {

std::string_view to_string(LrSchedule s) { return s == LrSchedule::Recurring ? "recurring" : "single"; }

LrSchedule parse_lr_schedule(std::string_view name) {
  if (name == "recurring") return LrSchedule::Recurring;
  if (name == "single") return LrSchedule::Single;
  throw ArgumentError("unknown learning-rate schedule '" + std::string(name) + "'");
}

void TrainConfig::validate() const {
  if (!(base_lr > 0.0)) throw ArgumentError("train config: base_lr must be positive");
  if (!(momentum >= 0.0 && momentum < 1.0)) throw ArgumentError("train config: momentum must lie in [0, 1)");
  if (batch_size < 1) throw ArgumentError("train config: batch_size must be at least 1");
  if (!(max_norm_limit > 0.0)) throw ArgumentError("train config: max_norm_limit must be positive");
  if (lr_halving_period < 1) throw ArgumentError("train config: lr_halving_period must be at least 1");
}

TrainConfig TrainConfig::dnn_preset() { return {}; }

TrainConfig TrainConfig::cnn_preset() {
  TrainConfig c;
  c.epochs = 20;
  c.lr_halving_period = 5;
  return c;
}

TrainConfig TrainConfig::preset(std::string_view arch) {
  if (arch == "dnn") return dnn_preset();
  if (arch == "cnn") return cnn_preset();
  throw ArgumentError("unknown architecture preset '" + std::string(arch) + "'");
}

double lr_at(std::size_t epoch, const TrainConfig& cfg) {
  std::size_t halvings = epoch / cfg.lr_halving_period;
  if (cfg.schedule == LrSchedule::Single) halvings = std::min<std::size_t>(halvings, 1);
  return std::ldexp(cfg.base_lr, -static_cast<int>(halvings));
}

double cross_entropy(std::span<const double> probs, std::size_t label) {
  if (label >= probs.size()) throw ArgumentError("cross_entropy: label " + std::to_string(label) + " out of range");
  return -std::log(std::max(probs[label], 1e-12));
}

template <typename T>
double cross_entropy_batch(const Tensor<T>& probs, std::span<const int> labels, Tensor<T>* grad_logits) {
  const std::size_t batch = probs.dim(0);
  const std::size_t m = probs.size() / batch;
  if (labels.size() != batch) throw ShapeError("cross_entropy_batch: label count differs from batch");
  if (grad_logits) grad_logits->resize({batch, m});
  double loss = 0.0;
  const double inv = 1.0 / static_cast<double>(batch);
  for (std::size_t n = 0; n < batch; ++n) {
    if (labels[n] < 0 || static_cast<std::size_t>(labels[n]) >= m)
      throw ArgumentError("cross_entropy: label " + std::to_string(labels[n]) + " out of range");
    const auto label = static_cast<std::size_t>(labels[n]);
    loss += -std::log(std::max(static_cast<double>(probs[n * m + label]), 1e-12));
    if (grad_logits)
      for (std::size_t j = 0; j < m; ++j)
        (*grad_logits)[n * m + j] = static_cast<T>((static_cast<double>(probs[n * m + j]) - (j == label ? 1.0 : 0.0)) * inv);
  }
  return loss * inv;
}

template <typename T>
OptimizerState<T>::OptimizerState(const std::vector<Param<T>*>& params) {
  velocity.reserve(params.size());
  for (const auto* p : params) velocity.emplace_back(p->value.shape());
}

template <typename T>
void sgd_momentum_step(const std::vector<Param<T>*>& params, OptimizerState<T>& state, double lr, double momentum) {
  if (state.velocity.size() != params.size()) throw ShapeError("sgd_momentum_step: optimizer state does not match parameters");
  for (std::size_t i = 0; i < params.size(); ++i) {
    Param<T>& p = *params[i];
    Tensor<T>& v = state.velocity[i];
    if (p.grad.size() != p.value.size() || v.size() != p.value.size())
      throw ShapeError("sgd_momentum_step: gradient shape mismatch for " + p.name);
    for (std::size_t j = 0; j < p.value.size(); ++j) {
      const double vj = momentum * static_cast<double>(v[j]) - lr * static_cast<double>(p.grad[j]);
      v[j] = static_cast<T>(vj);
      p.value[j] = static_cast<T>(static_cast<double>(p.value[j]) + static_cast<double>(v[j]));
    }
  }
  ++state.step;
}

template <typename T>
void max_norm_project(const std::vector<Param<T>*>& params, double limit) {
  for (auto* p : params) {
    if (!p->constrained) continue;
    const std::size_t rows = p->rows(), len = p->row_length();
    for (std::size_t r = 0; r < rows; ++r) {
      T* row = p->value.data() + r * len;
      double sq = 0.0;
      for (std::size_t j = 0; j < len; ++j) sq += static_cast<double>(row[j]) * row[j];
      const double norm = std::sqrt(sq);
      if (norm > limit) {
        const double scale = limit / norm;
        for (std::size_t j = 0; j < len; ++j) row[j] = static_cast<T>(row[j] * scale);
      }
    }
  }
}

template <typename T>
double max_constrained_norm(const std::vector<const Param<T>*>& params) {
  double worst = 0.0;
  for (const auto* p : params) {
    if (!p->constrained) continue;
    const std::size_t rows = p->rows(), len = p->row_length();
    for (std::size_t r = 0; r < rows; ++r) {
      const T* row = p->value.data() + r * len;
      double sq = 0.0;
      for (std::size_t j = 0; j < len; ++j) sq += static_cast<double>(row[j]) * row[j];
      worst = std::max(worst, std::sqrt(sq));
    }
  }
  return worst;
}

FitResult fit(Network<float>& net, const FrameSet& train, const TrainConfig& cfg, const FrameSet* val,
              const FitHooks& hooks) {
  cfg.validate();
  if (train.empty()) throw ArgumentError("fit: empty training set");
  if (train.dim != net.input_length())
    throw ShapeError("fit: frames have " + std::to_string(train.dim) + " values, network expects " +
                     std::to_string(net.input_length()));
  const std::size_t m = net.num_classes();
  for (int label : train.labels)
    if (label < 0 || static_cast<std::size_t>(label) >= m)
      throw ArgumentError("fit: training label " + std::to_string(label) + " outside the network's classes");

  Rng rng(cfg.seed);
  auto params = net.params();
  OptimizerState<float> state(params);
  FitResult result;

  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Tensor<float> batch;
  Tensor<float> grad_logits;
  std::vector<int> labels;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    state.epoch = epoch;
    const double lr = lr_at(epoch, cfg);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[uniform_index(rng, i)]);

    double loss_sum = 0.0;
    ConfusionMatrix confusion(m);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t n = std::min(cfg.batch_size, order.size() - start);
      batch.resize({n, train.dim});
      labels.resize(n);
      for (std::size_t r = 0; r < n; ++r) {
        const auto f = train.frame(order[start + r]);
        std::copy(f.begin(), f.end(), batch.data() + r * train.dim);
        labels[r] = train.labels[order[start + r]];
      }
      const auto& probs = net.forward(batch, Pass::Train, &rng);
      const double loss = cross_entropy_batch(probs, labels, &grad_logits);
      if (!std::isfinite(loss))
        throw DivergenceError("training diverged: non-finite loss at epoch " + std::to_string(epoch) + ", step " +
                                  std::to_string(state.step),
                              epoch, state.step);
      for (std::size_t r = 0; r < n; ++r) {
        std::size_t best = 0;
        for (std::size_t j = 1; j < m; ++j)
          if (probs[r * m + j] > probs[r * m + best]) best = j;
        confusion.add(static_cast<std::size_t>(labels[r]), best);
      }
      loss_sum += loss * static_cast<double>(n);

      net.backward_logits(grad_logits);
      sgd_momentum_step(params, state, lr, cfg.momentum);
      max_norm_project(params, cfg.max_norm_limit);
      if (hooks.on_step) hooks.on_step(net, {epoch, state.step, loss, std::span(order).subspan(start, n)});
    }

    EpochMetrics em;
    em.epoch = epoch;
    em.lr = lr;
    em.train_loss = loss_sum / static_cast<double>(train.size());
    em.train_frame_fscore = macro_fscore(confusion);
    if (val && !val->empty()) em.val_frame_fscore = frame_fscore(net, *val);
    result.epochs.push_back(em);
    if (hooks.on_epoch) hooks.on_epoch(net, em);
  }
  result.steps = state.step;
  return result;
}

std::string metrics_csv(const std::vector<EpochMetrics>& epochs) {
  std::ostringstream os;
  os << "epoch,lr,train_loss,train_frame_fscore,val_frame_fscore\n";
  char buf[160];
  for (const auto& e : epochs) {
    std::snprintf(buf, sizeof buf, "%zu,%.9g,%.9g,%.9g,", e.epoch, e.lr, e.train_loss, e.train_frame_fscore);
    os << buf;
    if (e.val_frame_fscore) {
      std::snprintf(buf, sizeof buf, "%.9g", *e.val_frame_fscore);
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

template double cross_entropy_batch<float>(const Tensor<float>&, std::span<const int>, Tensor<float>*);
template double cross_entropy_batch<double>(const Tensor<double>&, std::span<const int>, Tensor<double>*);
template struct OptimizerState<float>;
template struct OptimizerState<double>;
template void sgd_momentum_step<float>(const std::vector<Param<float>*>&, OptimizerState<float>&, double, double);
template void sgd_momentum_step<double>(const std::vector<Param<double>*>&, OptimizerState<double>&, double, double);
template void max_norm_project<float>(const std::vector<Param<float>*>&, double);
template void max_norm_project<double>(const std::vector<Param<double>*>&, double);
template double max_constrained_norm<float>(const std::vector<const Param<float>*>&);
template double max_constrained_norm<double>(const std::vector<const Param<double>*>&);

}  // namespace aer

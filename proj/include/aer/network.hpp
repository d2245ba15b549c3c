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

#include <memory>
#include <string>
#include <vector>

#include "aer/network_spec.hpp"
#include "aer/rng.hpp"
#include "aer/tensor.hpp"

namespace aer {

enum class Pass { Train, Infer };

/// One trainable tensor with its gradient. Weights are max-norm constrained row by row
/// (dense rows, per-output-channel kernel slices); biases are not.
template <typename T>
struct Param {
  std::string name;
  Tensor<T> value;
  Tensor<T> grad;
  bool constrained = false;
  /// Number of independent incoming-weight vectors (rows) in `value`.
  std::size_t rows() const { return value.dim(0); }
  std::size_t row_length() const { return value.size() / value.dim(0); }
};

template <typename T>
class LayerImpl;

/// Executable network built from a NetworkSpec. Forward takes a batch {B, L} or {B, 1, L}
/// and returns softmax probabilities {B, classes}.
template <typename T>
class Network {
 public:
  explicit Network(NetworkSpec spec);
  ~Network();
  Network(Network&&) noexcept;
  Network& operator=(Network&&) noexcept;

  const NetworkSpec& spec() const { return spec_; }
  const std::vector<LayerShape>& shapes() const { return shapes_; }
  std::size_t input_length() const { return spec_.input_length(); }
  std::size_t num_classes() const { return spec_.num_classes(); }

  /// Parameters in layer order, weight before bias.
  std::vector<Param<T>*> params();
  std::vector<const Param<T>*> params() const;

  /// Glorot-uniform weights, zero biases.
  void init_glorot(Rng& rng);

  /// `rng` is required for Pass::Train when the network has dropout.
  const Tensor<T>& forward(const Tensor<T>& input, Pass pass, Rng* rng = nullptr);
  const Tensor<T>& probs() const { return acts_.back(); }
  const Tensor<T>& logits() const { return acts_[acts_.size() - 2]; }

  /// Backpropagates d(loss)/d(logits) from the last forward pass into every Param::grad.
  void backward_logits(const Tensor<T>& grad_logits, bool need_input_grad = false);
  /// Same, starting from d(loss)/d(probabilities).
  void backward_probs(const Tensor<T>& grad_probs, bool need_input_grad = false);
  /// Gradient with respect to the last input; valid after a backward call with need_input_grad.
  const Tensor<T>& input_grad() const { return input_grad_; }

  /// Copies parameter values from a network of the same architecture.
  template <typename U>
  void copy_params_from(const Network<U>& other) {
    auto dst = params();
    auto src = other.params();
    if (dst.size() != src.size()) throw ShapeError("copy_params_from: architectures differ");
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (dst[i]->value.shape() != src[i]->value.shape()) throw ShapeError("copy_params_from: shape mismatch");
      for (std::size_t j = 0; j < dst[i]->value.size(); ++j) dst[i]->value[j] = static_cast<T>(src[i]->value[j]);
    }
  }

 private:
  void backward_from(std::size_t layer, Tensor<T> grad, bool need_input_grad);

  NetworkSpec spec_;
  std::vector<LayerShape> shapes_;
  std::vector<std::unique_ptr<LayerImpl<T>>> layers_;
  // acts_[i] is the output of layer i; the input layer's output is the reshaped input.
  std::vector<Tensor<T>> acts_;
  Tensor<T> input_grad_;
  std::size_t first_param_layer_ = 0;
};

/// Half-width sqrt(6 / (fan_in + fan_out)) of the Glorot-uniform distribution.
double glorot_limit(std::size_t fan_in, std::size_t fan_out);

/// Tensor of `shape` with entries uniform on [-a, a), a = glorot_limit(fan_in, fan_out).
template <typename T>
Tensor<T> glorot_uniform(std::vector<std::size_t> shape, std::size_t fan_in, std::size_t fan_out, Rng& rng);

extern template class Network<float>;
extern template class Network<double>;

}  // namespace aer

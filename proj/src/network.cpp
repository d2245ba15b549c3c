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

#include "aer/network.hpp"

#include <cmath>

#include "aer/layers.hpp"

namespace aer {

template <typename T>
class LayerImpl {
 public:
  virtual ~LayerImpl() = default;
  virtual void forward(const Tensor<T>& in, Tensor<T>& out, Pass pass, Rng* rng) = 0;
  /// `grad_out` may be modified in place. `grad_in` is null when not needed.
  virtual void backward(const Tensor<T>& in, const Tensor<T>& out, Tensor<T>& grad_out, Tensor<T>* grad_in) = 0;
  virtual std::vector<Param<T>*> params() { return {}; }
  virtual void init(Rng&) {}
};

namespace {

template <typename T>
class InputLayer final : public LayerImpl<T> {
 public:
  explicit InputLayer(std::size_t len) : len_(len) {}
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass, Rng*) override {
    const std::size_t batch = in.rank() ? in.dim(0) : 0;
    if (batch == 0 || in.size() != batch * len_)
      throw ShapeError("network input: expected " + std::to_string(len_) + " values per example");
    out.resize({batch, 1, len_});
    std::copy(in.values().begin(), in.values().end(), out.values().begin());
  }
  void backward(const Tensor<T>&, const Tensor<T>&, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (grad_in) *grad_in = grad_out;
  }

 private:
  std::size_t len_;
};

template <typename T>
class DropoutLayer final : public LayerImpl<T> {
 public:
  explicit DropoutLayer(double p) : p_(p) {}
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass pass, Rng* rng) override {
    const bool training = pass == Pass::Train && p_ > 0.0;
    if (training && !rng) throw ArgumentError("dropout: training pass needs a random generator");
    Rng unused;
    dropout_forward(in, p_, rng ? *rng : unused, training, out, mask_);
  }
  void backward(const Tensor<T>&, const Tensor<T>&, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (grad_in) dropout_backward(grad_out, mask_, *grad_in);
  }

 private:
  double p_;
  std::vector<T> mask_;
};

template <typename T>
class DenseLayer final : public LayerImpl<T> {
 public:
  DenseLayer(std::size_t in, std::size_t out, bool relu, std::size_t index) : relu_(relu) {
    w_.name = "layer" + std::to_string(index) + ".weight";
    w_.value = Tensor<T>({out, in});
    w_.constrained = true;
    b_.name = "layer" + std::to_string(index) + ".bias";
    b_.value = Tensor<T>({out});
  }
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass, Rng*) override {
    dense_forward(in, w_.value, b_.value, out);
    if (relu_) relu_forward(out);
  }
  void backward(const Tensor<T>& in, const Tensor<T>& out, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (relu_) relu_backward(out, grad_out);
    dense_backward(in, w_.value, grad_out, grad_in, w_.grad, b_.grad);
  }
  std::vector<Param<T>*> params() override { return {&w_, &b_}; }
  void init(Rng& rng) override {
    w_.value = glorot_uniform<T>(w_.value.shape(), w_.value.dim(1), w_.value.dim(0), rng);
    b_.value.fill(T{});
  }

 private:
  bool relu_;
  Param<T> w_, b_;
};

template <typename T>
class ConvLayer final : public LayerImpl<T> {
 public:
  ConvLayer(std::size_t c_in, std::size_t c_out, std::size_t kernel, bool relu, std::size_t index) : relu_(relu) {
    k_.name = "layer" + std::to_string(index) + ".kernel";
    k_.value = Tensor<T>({c_out, c_in, kernel});
    k_.constrained = true;
    b_.name = "layer" + std::to_string(index) + ".bias";
    b_.value = Tensor<T>({c_out});
  }
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass, Rng*) override {
    conv1d_forward(in, k_.value, b_.value, out);
    if (relu_) relu_forward(out);
  }
  void backward(const Tensor<T>& in, const Tensor<T>& out, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (relu_) relu_backward(out, grad_out);
    conv1d_backward(in, k_.value, grad_out, grad_in, k_.grad, b_.grad);
  }
  std::vector<Param<T>*> params() override { return {&k_, &b_}; }
  void init(Rng& rng) override {
    const std::size_t c_out = k_.value.dim(0), c_in = k_.value.dim(1), kw = k_.value.dim(2);
    k_.value = glorot_uniform<T>(k_.value.shape(), c_in * kw, c_out * kw, rng);
    b_.value.fill(T{});
  }

 private:
  bool relu_;
  Param<T> k_, b_;
};

template <typename T>
class PoolLayer final : public LayerImpl<T> {
 public:
  PoolLayer(std::size_t size, std::size_t stride) : size_(size), stride_(stride) {}
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass, Rng*) override {
    maxpool1d_forward(in, size_, stride_, out, argmax_);
  }
  void backward(const Tensor<T>& in, const Tensor<T>&, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (grad_in) maxpool1d_backward(grad_out, argmax_, in.shape(), *grad_in);
  }

 private:
  std::size_t size_, stride_;
  std::vector<std::uint32_t> argmax_;
};

template <typename T>
class SoftmaxLayer final : public LayerImpl<T> {
 public:
  void forward(const Tensor<T>& in, Tensor<T>& out, Pass, Rng*) override { softmax_rows(in, out); }
  void backward(const Tensor<T>&, const Tensor<T>& out, Tensor<T>& grad_out, Tensor<T>* grad_in) override {
    if (grad_in) softmax_backward(out, grad_out, *grad_in);
  }
};

}  // namespace

template <typename T>
Network<T>::Network(NetworkSpec spec) : spec_(std::move(spec)) {
  spec_.validate();
  shapes_ = shape_infer(spec_, spec_.input_length());
  for (std::size_t i = 0; i < spec_.layers.size(); ++i) {
    const auto& l = spec_.layers[i];
    const LayerShape in = i ? shapes_[i - 1] : LayerShape{1, l.units};
    switch (l.kind) {
      case LayerKind::Input: layers_.push_back(std::make_unique<InputLayer<T>>(l.units)); break;
      case LayerKind::Dropout: layers_.push_back(std::make_unique<DropoutLayer<T>>(l.dropout)); break;
      case LayerKind::FullyConnected:
        layers_.push_back(std::make_unique<DenseLayer<T>>(in.size(), l.units, l.relu, i));
        break;
      case LayerKind::Convolution:
        layers_.push_back(std::make_unique<ConvLayer<T>>(in.rows, l.units, l.size, l.relu, i));
        break;
      case LayerKind::Pooling: layers_.push_back(std::make_unique<PoolLayer<T>>(l.size, l.stride)); break;
      case LayerKind::Softmax: layers_.push_back(std::make_unique<SoftmaxLayer<T>>()); break;
    }
  }
  acts_.resize(layers_.size());
  first_param_layer_ = layers_.size();
  for (std::size_t i = 0; i < layers_.size() && first_param_layer_ == layers_.size(); ++i)
    if (!layers_[i]->params().empty()) first_param_layer_ = i;
}

template <typename T>
Network<T>::~Network() = default;
template <typename T>
Network<T>::Network(Network&&) noexcept = default;
template <typename T>
Network<T>& Network<T>::operator=(Network&&) noexcept = default;

template <typename T>
std::vector<Param<T>*> Network<T>::params() {
  std::vector<Param<T>*> out;
  for (auto& l : layers_)
    for (auto* p : l->params()) out.push_back(p);
  return out;
}

template <typename T>
std::vector<const Param<T>*> Network<T>::params() const {
  std::vector<const Param<T>*> out;
  for (auto& l : layers_)
    for (auto* p : l->params()) out.push_back(p);
  return out;
}

template <typename T>
void Network<T>::init_glorot(Rng& rng) {
  for (auto& l : layers_) l->init(rng);
}

template <typename T>
const Tensor<T>& Network<T>::forward(const Tensor<T>& input, Pass pass, Rng* rng) {
  const Tensor<T>* cur = &input;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    layers_[i]->forward(*cur, acts_[i], pass, rng);
#ifndef NDEBUG
    if (!acts_[i].all_finite()) throw ArgumentError("non-finite activation after layer " + std::to_string(i));
#endif
    cur = &acts_[i];
  }
  return acts_.back();
}

template <typename T>
void Network<T>::backward_from(std::size_t top, Tensor<T> grad, bool need_input_grad) {
  Tensor<T> next;
  for (std::size_t i = top + 1; i-- > 0;) {
    const Tensor<T>& in = i ? acts_[i - 1] : acts_[0];
    // Below the first parametric layer gradients are only useful to a caller who asked.
    const bool propagate = need_input_grad || i > first_param_layer_;
    layers_[i]->backward(in, acts_[i], grad, propagate ? &next : nullptr);
    if (!propagate) return;
    std::swap(grad, next);
  }
  input_grad_ = std::move(grad);
}

template <typename T>
void Network<T>::backward_logits(const Tensor<T>& grad_logits, bool need_input_grad) {
  backward_from(layers_.size() - 2, grad_logits, need_input_grad);
}

template <typename T>
void Network<T>::backward_probs(const Tensor<T>& grad_probs, bool need_input_grad) {
  backward_from(layers_.size() - 1, grad_probs, need_input_grad);
}

double glorot_limit(std::size_t fan_in, std::size_t fan_out) {
  return std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
}

template <typename T>
Tensor<T> glorot_uniform(std::vector<std::size_t> shape, std::size_t fan_in, std::size_t fan_out, Rng& rng) {
  const double a = glorot_limit(fan_in, fan_out);
  Tensor<T> t(std::move(shape));
  for (T& v : t.values()) v = static_cast<T>(-a + 2.0 * a * uniform01(rng));
  return t;
}

template Tensor<float> glorot_uniform<float>(std::vector<std::size_t>, std::size_t, std::size_t, Rng&);
template Tensor<double> glorot_uniform<double>(std::vector<std::size_t>, std::size_t, std::size_t, Rng&);

template class Network<float>;
template class Network<double>;

}  // namespace aer

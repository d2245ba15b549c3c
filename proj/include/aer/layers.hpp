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
#include <span>
#include <vector>

#include "aer/rng.hpp"
#include "aer/tensor.hpp"

// Batched layer primitives. Activations are {batch, rows, cols}; the dense layer flattens
// each example. All reductions accumulate in double. Instantiated for float (through the
// SIMD kernel table) and double (plain loops, used by the gradient checks).

namespace aer {

/// y = x W^T + b.  x: {B, ...} with in = size/B; w: {out, in}; b: {out}; y becomes {B, 1, out}.
template <typename T>
void dense_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b, Tensor<T>& y);

/// Gradients of dense_forward. grad_x may be null when the input gradient is not needed;
/// otherwise it takes the shape of x.
template <typename T>
void dense_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& grad_y, Tensor<T>* grad_x,
                    Tensor<T>& grad_w, Tensor<T>& grad_b);

/// Valid cross-correlation, stride 1:
///   y[n, c, i] = b[c] + sum_{c', j} x[n, c', i + j] k[c, c', j]
/// x: {B, C_in, L}; k: {C_out, C_in, K}; y becomes {B, C_out, L - K + 1}.
template <typename T>
void conv1d_forward(const Tensor<T>& x, const Tensor<T>& k, const Tensor<T>& b, Tensor<T>& y);

template <typename T>
void conv1d_backward(const Tensor<T>& x, const Tensor<T>& k, const Tensor<T>& grad_y, Tensor<T>* grad_x,
                     Tensor<T>& grad_k, Tensor<T>& grad_b);

/// Non-overlapping or strided max pooling without padding; trailing samples that do not fill
/// a window are ignored. `argmax` receives the flat index into x of each output, taking the
/// lowest index among equal maxima.
template <typename T>
void maxpool1d_forward(const Tensor<T>& x, std::size_t size, std::size_t stride, Tensor<T>& y,
                       std::vector<std::uint32_t>& argmax);

/// Routes every output gradient to its argmax; grad_x takes `x_shape` and is zero elsewhere.
template <typename T>
void maxpool1d_backward(const Tensor<T>& grad_y, const std::vector<std::uint32_t>& argmax,
                        const std::vector<std::size_t>& x_shape, Tensor<T>& grad_x);

template <typename T>
void relu_forward(Tensor<T>& x);

/// Zeroes grad wherever the ReLU output y is not positive (subgradient 0 at 0).
template <typename T>
void relu_backward(const Tensor<T>& y, Tensor<T>& grad);

/// Max-subtracted softmax of one vector.
template <typename T>
void softmax(std::span<const T> x, std::span<T> out);

/// Row-wise softmax over {B, n}.
template <typename T>
void softmax_rows(const Tensor<T>& logits, Tensor<T>& probs);

/// Vector-Jacobian product of softmax: g_in = p * (g - <p, g>), row-wise.
template <typename T>
void softmax_backward(const Tensor<T>& probs, const Tensor<T>& grad_probs, Tensor<T>& grad_logits);

/// Inverted dropout. In training each unit survives with probability 1 - p and is scaled by
/// 1 / (1 - p); `mask` keeps the per-unit factor (0 or 1 / (1 - p)). Inference is the identity
/// with an all-ones mask.
template <typename T>
void dropout_forward(const Tensor<T>& x, double p, Rng& rng, bool training, Tensor<T>& y, std::vector<T>& mask);

template <typename T>
void dropout_backward(const Tensor<T>& grad_y, const std::vector<T>& mask, Tensor<T>& grad_x);

}  // namespace aer

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

#include "aer/layers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aer/simd/kernels.hpp"

namespace aer {
namespace {

// Float goes through the dispatched SIMD table; double stays on plain loops.
inline double dot(const float* a, const float* b, std::size_t n) { return simd::kernels().dot(a, b, n); }
inline void dot4(const float* w, const float* const* x, std::size_t n, double* out) {
  simd::kernels().dot4(w, x, n, out);
}
inline void axpy(double* acc, double alpha, const float* x, std::size_t n) { simd::kernels().axpy(acc, alpha, x, n); }
inline void axpy4(double* acc, const double* alpha, const float* const* x, std::size_t n) {
  simd::kernels().axpy4(acc, alpha, x, n);
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}
inline void dot4(const double* w, const double* const* x, std::size_t n, double* out) {
  for (int r = 0; r < 4; ++r) out[r] = dot(w, x[r], n);
}
inline void axpy(double* acc, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += alpha * x[i];
}
inline void axpy4(double* acc, const double* alpha, const double* const* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = acc[i];
    v += alpha[0] * x[0][i];
    v += alpha[1] * x[1][i];
    v += alpha[2] * x[2][i];
    v += alpha[3] * x[3][i];
    acc[i] = v;
  }
}

// rows[r] · w for every row, four rows at a time.
template <typename T>
void rows_dot(const T* w, const T* rows, std::size_t row_stride, std::size_t n_rows, std::size_t n,
              double* out, std::size_t out_stride) {
  std::size_t r = 0;
  double tmp[4];
  for (; r + 4 <= n_rows; r += 4) {
    const T* xs[4] = {rows + r * row_stride, rows + (r + 1) * row_stride, rows + (r + 2) * row_stride,
                      rows + (r + 3) * row_stride};
    dot4(w, xs, n, tmp);
    for (int q = 0; q < 4; ++q) out[(r + q) * out_stride] = tmp[q];
  }
  for (; r < n_rows; ++r) out[r * out_stride] = dot(w, rows + r * row_stride, n);
}

// acc += sum_r alpha[r * alpha_stride] * rows[r], four rows at a time.
template <typename T>
void rows_axpy(double* acc, const T* alpha, std::size_t alpha_stride, const T* rows, std::size_t row_stride,
               std::size_t n_rows, std::size_t n) {
  std::size_t r = 0;
  for (; r + 4 <= n_rows; r += 4) {
    const double a[4] = {static_cast<double>(alpha[r * alpha_stride]), static_cast<double>(alpha[(r + 1) * alpha_stride]),
                         static_cast<double>(alpha[(r + 2) * alpha_stride]),
                         static_cast<double>(alpha[(r + 3) * alpha_stride])};
    const T* xs[4] = {rows + r * row_stride, rows + (r + 1) * row_stride, rows + (r + 2) * row_stride,
                      rows + (r + 3) * row_stride};
    axpy4(acc, a, xs, n);
  }
  for (; r < n_rows; ++r) axpy(acc, static_cast<double>(alpha[r * alpha_stride]), rows + r * row_stride, n);
}

template <typename T>
void im2col(const T* x, std::size_t channels, std::size_t len, std::size_t kernel, std::vector<T>& cols) {
  const std::size_t out_len = len - kernel + 1;
  const std::size_t width = channels * kernel;
  cols.resize(out_len * width);
  for (std::size_t i = 0; i < out_len; ++i) {
    T* row = cols.data() + i * width;
    for (std::size_t c = 0; c < channels; ++c) std::copy_n(x + c * len + i, kernel, row + c * kernel);
  }
}

}  // namespace

template <typename T>
void dense_forward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& b, Tensor<T>& y) {
  if (x.rank() < 1 || w.rank() != 2 || b.rank() != 1) throw ShapeError("dense_forward: bad tensor ranks");
  const std::size_t batch = x.dim(0);
  const std::size_t out = w.dim(0), in = w.dim(1);
  if (batch == 0 || x.size() != batch * in)
    throw ShapeError("dense_forward: input has " + std::to_string(batch ? x.size() / batch : 0) +
                     " values per example, weights expect " + std::to_string(in));
  if (b.dim(0) != out) throw ShapeError("dense_forward: bias length mismatch");
  y.resize({batch, 1, out});
  // Blocks of weight rows stay cache-resident while the batch streams past them.
  constexpr std::size_t kRowBlock = 16;
  double tmp[kRowBlock];
  for (std::size_t ob = 0; ob < out; ob += kRowBlock) {
    const std::size_t nb = std::min(kRowBlock, out - ob);
    for (std::size_t n = 0; n < batch; ++n) {
      rows_dot(x.data() + n * in, w.data() + ob * in, in, nb, in, tmp, 1);
      for (std::size_t q = 0; q < nb; ++q)
        y[n * out + ob + q] = static_cast<T>(tmp[q] + static_cast<double>(b[ob + q]));
    }
  }
}

template <typename T>
void dense_backward(const Tensor<T>& x, const Tensor<T>& w, const Tensor<T>& grad_y, Tensor<T>* grad_x,
                    Tensor<T>& grad_w, Tensor<T>& grad_b) {
  const std::size_t batch = x.dim(0);
  const std::size_t out = w.dim(0), in = w.dim(1);
  if (grad_y.size() != batch * out) throw ShapeError("dense_backward: output gradient shape mismatch");
  grad_w.resize({out, in});
  grad_b.resize({out});
  std::vector<double> acc(in);
  for (std::size_t o = 0; o < out; ++o) {
    std::fill(acc.begin(), acc.end(), 0.0);
    rows_axpy(acc.data(), grad_y.data() + o, out, x.data(), in, batch, in);
    T* gw = grad_w.data() + o * in;
    for (std::size_t i = 0; i < in; ++i) gw[i] = static_cast<T>(acc[i]);
    double gb = 0.0;
    for (std::size_t n = 0; n < batch; ++n) gb += grad_y[n * out + o];
    grad_b[o] = static_cast<T>(gb);
  }
  if (!grad_x) return;
  grad_x->resize(x.shape());
  for (std::size_t n = 0; n < batch; ++n) {
    std::fill(acc.begin(), acc.end(), 0.0);
    rows_axpy(acc.data(), grad_y.data() + n * out, 1, w.data(), in, out, in);
    T* gx = grad_x->data() + n * in;
    for (std::size_t i = 0; i < in; ++i) gx[i] = static_cast<T>(acc[i]);
  }
}

template <typename T>
void conv1d_forward(const Tensor<T>& x, const Tensor<T>& k, const Tensor<T>& b, Tensor<T>& y) {
  if (x.rank() != 3 || k.rank() != 3 || b.rank() != 1) throw ShapeError("conv1d_forward: bad tensor ranks");
  const std::size_t batch = x.dim(0), c_in = x.dim(1), len = x.dim(2);
  const std::size_t c_out = k.dim(0), kw = k.dim(2);
  if (k.dim(1) != c_in) throw ShapeError("conv1d_forward: kernel expects " + std::to_string(k.dim(1)) +
                                         " input channels, got " + std::to_string(c_in));
  if (kw > len) throw ShapeError("conv1d_forward: kernel width " + std::to_string(kw) + " exceeds input length " +
                                 std::to_string(len));
  if (b.dim(0) != c_out) throw ShapeError("conv1d_forward: bias length mismatch");
  const std::size_t out_len = len - kw + 1;
  const std::size_t width = c_in * kw;
  y.resize({batch, c_out, out_len});
  std::vector<T> cols;
  std::vector<double> row(out_len);
  for (std::size_t n = 0; n < batch; ++n) {
    im2col(x.data() + n * c_in * len, c_in, len, kw, cols);
    for (std::size_t c = 0; c < c_out; ++c) {
      rows_dot(k.data() + c * width, cols.data(), width, out_len, width, row.data(), 1);
      T* dst = y.data() + (n * c_out + c) * out_len;
      const double bias = static_cast<double>(b[c]);
      for (std::size_t i = 0; i < out_len; ++i) dst[i] = static_cast<T>(row[i] + bias);
    }
  }
}

template <typename T>
void conv1d_backward(const Tensor<T>& x, const Tensor<T>& k, const Tensor<T>& grad_y, Tensor<T>* grad_x,
                     Tensor<T>& grad_k, Tensor<T>& grad_b) {
  const std::size_t batch = x.dim(0), c_in = x.dim(1), len = x.dim(2);
  const std::size_t c_out = k.dim(0), kw = k.dim(2);
  const std::size_t out_len = len - kw + 1;
  const std::size_t width = c_in * kw;
  if (grad_y.size() != batch * c_out * out_len) throw ShapeError("conv1d_backward: output gradient shape mismatch");

  std::vector<double> acc_k(c_out * width, 0.0);
  std::vector<double> acc_b(c_out, 0.0);
  std::vector<double> acc_col(width);
  std::vector<double> acc_x;
  std::vector<T> cols;
  if (grad_x) {
    grad_x->resize(x.shape());
    acc_x.resize(c_in * len);
  }
  // Transposed copy of one example's output gradient so that positions become rows.
  std::vector<T> gy_t(out_len * c_out);

  for (std::size_t n = 0; n < batch; ++n) {
    im2col(x.data() + n * c_in * len, c_in, len, kw, cols);
    const T* gy = grad_y.data() + n * c_out * out_len;
    for (std::size_t c = 0; c < c_out; ++c) {
      rows_axpy(acc_k.data() + c * width, gy + c * out_len, 1, cols.data(), width, out_len, width);
      double s = 0.0;
      for (std::size_t i = 0; i < out_len; ++i) s += gy[c * out_len + i];
      acc_b[c] += s;
    }
    if (!grad_x) continue;
    for (std::size_t c = 0; c < c_out; ++c)
      for (std::size_t i = 0; i < out_len; ++i) gy_t[i * c_out + c] = gy[c * out_len + i];
    std::fill(acc_x.begin(), acc_x.end(), 0.0);
    for (std::size_t i = 0; i < out_len; ++i) {
      std::fill(acc_col.begin(), acc_col.end(), 0.0);
      rows_axpy(acc_col.data(), gy_t.data() + i * c_out, 1, k.data(), width, c_out, width);
      for (std::size_t ci = 0; ci < c_in; ++ci)
        for (std::size_t j = 0; j < kw; ++j) acc_x[ci * len + i + j] += acc_col[ci * kw + j];
    }
    T* gx = grad_x->data() + n * c_in * len;
    for (std::size_t i = 0; i < c_in * len; ++i) gx[i] = static_cast<T>(acc_x[i]);
  }
  grad_k.resize(k.shape());
  grad_b.resize({c_out});
  for (std::size_t i = 0; i < acc_k.size(); ++i) grad_k[i] = static_cast<T>(acc_k[i]);
  for (std::size_t c = 0; c < c_out; ++c) grad_b[c] = static_cast<T>(acc_b[c]);
}

template <typename T>
void maxpool1d_forward(const Tensor<T>& x, std::size_t size, std::size_t stride, Tensor<T>& y,
                       std::vector<std::uint32_t>& argmax) {
  if (x.rank() != 3) throw ShapeError("maxpool1d_forward: expected {batch, channels, length}");
  const std::size_t batch = x.dim(0), ch = x.dim(1), len = x.dim(2);
  if (size == 0 || stride == 0) throw ShapeError("maxpool1d_forward: size and stride must be positive");
  if (size > len) throw ShapeError("maxpool1d_forward: pool width " + std::to_string(size) +
                                   " exceeds input length " + std::to_string(len));
  const std::size_t out_len = (len - size) / stride + 1;
  y.resize({batch, ch, out_len});
  argmax.resize(y.size());
  for (std::size_t r = 0; r < batch * ch; ++r) {
    const T* src = x.data() + r * len;
    for (std::size_t i = 0; i < out_len; ++i) {
      std::size_t best = i * stride;
      for (std::size_t j = 1; j < size; ++j)
        if (src[i * stride + j] > src[best]) best = i * stride + j;
      y[r * out_len + i] = src[best];
      argmax[r * out_len + i] = static_cast<std::uint32_t>(r * len + best);
    }
  }
}

template <typename T>
void maxpool1d_backward(const Tensor<T>& grad_y, const std::vector<std::uint32_t>& argmax,
                        const std::vector<std::size_t>& x_shape, Tensor<T>& grad_x) {
  if (grad_y.size() != argmax.size()) throw ShapeError("maxpool1d_backward: gradient/argmax size mismatch");
  grad_x.resize(x_shape);
  grad_x.fill(T{});
  for (std::size_t i = 0; i < argmax.size(); ++i) grad_x[argmax[i]] += grad_y[i];
}

template <typename T>
void relu_forward(Tensor<T>& x) {
  for (T& v : x.values()) v = v < T{} ? T{} : v;  // NaN passes through so divergence stays visible
}

template <typename T>
void relu_backward(const Tensor<T>& y, Tensor<T>& grad) {
  if (y.size() != grad.size()) throw ShapeError("relu_backward: size mismatch");
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!(y[i] > T{})) grad[i] = T{};
}

template <typename T>
void softmax(std::span<const T> x, std::span<T> out) {
  if (x.empty() || x.size() != out.size()) throw ShapeError("softmax: empty input or size mismatch");
  double m = -std::numeric_limits<double>::infinity();
  for (T v : x) m = std::max(m, static_cast<double>(v));
  double sum = 0.0;
  std::vector<double> e(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    e[i] = std::exp(static_cast<double>(x[i]) - m);
    sum += e[i];
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = static_cast<T>(e[i] / sum);
}

template <typename T>
void softmax_rows(const Tensor<T>& logits, Tensor<T>& probs) {
  const std::size_t batch = logits.dim(0);
  const std::size_t n = logits.size() / batch;
  probs.resize({batch, n});
  for (std::size_t r = 0; r < batch; ++r)
    softmax<T>(std::span<const T>(logits.data() + r * n, n), std::span<T>(probs.data() + r * n, n));
}

template <typename T>
void softmax_backward(const Tensor<T>& probs, const Tensor<T>& grad_probs, Tensor<T>& grad_logits) {
  if (probs.size() != grad_probs.size()) throw ShapeError("softmax_backward: size mismatch");
  const std::size_t batch = probs.dim(0);
  const std::size_t n = probs.size() / batch;
  grad_logits.resize(probs.shape());
  for (std::size_t r = 0; r < batch; ++r) {
    const T* p = probs.data() + r * n;
    const T* g = grad_probs.data() + r * n;
    double inner = 0.0;
    for (std::size_t i = 0; i < n; ++i) inner += static_cast<double>(p[i]) * g[i];
    for (std::size_t i = 0; i < n; ++i) grad_logits[r * n + i] = static_cast<T>(p[i] * (g[i] - inner));
  }
}

template <typename T>
void dropout_forward(const Tensor<T>& x, double p, Rng& rng, bool training, Tensor<T>& y, std::vector<T>& mask) {
  if (!(p >= 0.0 && p < 1.0)) throw ArgumentError("dropout probability must lie in [0, 1)");
  y.resize(x.shape());
  mask.resize(x.size());
  if (!training || p == 0.0) {
    std::fill(mask.begin(), mask.end(), T{1});
    std::copy(x.values().begin(), x.values().end(), y.values().begin());
    return;
  }
  const T keep_scale = static_cast<T>(1.0 / (1.0 - p));
  for (std::size_t i = 0; i < x.size(); ++i) {
    mask[i] = uniform01(rng) < p ? T{} : keep_scale;
    y[i] = x[i] * mask[i];
  }
}

template <typename T>
void dropout_backward(const Tensor<T>& grad_y, const std::vector<T>& mask, Tensor<T>& grad_x) {
  if (grad_y.size() != mask.size()) throw ShapeError("dropout_backward: mask size mismatch");
  grad_x.resize(grad_y.shape());
  for (std::size_t i = 0; i < mask.size(); ++i) grad_x[i] = grad_y[i] * mask[i];
}

#define AER_INSTANTIATE_LAYERS(T)                                                                              \
  template void dense_forward<T>(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, Tensor<T>&);            \
  template void dense_backward<T>(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, Tensor<T>*, Tensor<T>&, \
                                  Tensor<T>&);                                                                 \
  template void conv1d_forward<T>(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, Tensor<T>&);           \
  template void conv1d_backward<T>(const Tensor<T>&, const Tensor<T>&, const Tensor<T>&, Tensor<T>*,           \
                                   Tensor<T>&, Tensor<T>&);                                                    \
  template void maxpool1d_forward<T>(const Tensor<T>&, std::size_t, std::size_t, Tensor<T>&,                   \
                                     std::vector<std::uint32_t>&);                                             \
  template void maxpool1d_backward<T>(const Tensor<T>&, const std::vector<std::uint32_t>&,                     \
                                      const std::vector<std::size_t>&, Tensor<T>&);                            \
  template void relu_forward<T>(Tensor<T>&);                                                                   \
  template void relu_backward<T>(const Tensor<T>&, Tensor<T>&);                                                \
  template void softmax<T>(std::span<const T>, std::span<T>);                                                  \
  template void softmax_rows<T>(const Tensor<T>&, Tensor<T>&);                                                 \
  template void softmax_backward<T>(const Tensor<T>&, const Tensor<T>&, Tensor<T>&);                           \
  template void dropout_forward<T>(const Tensor<T>&, double, Rng&, bool, Tensor<T>&, std::vector<T>&);         \
  template void dropout_backward<T>(const Tensor<T>&, const std::vector<T>&, Tensor<T>&);

AER_INSTANTIATE_LAYERS(float)
AER_INSTANTIATE_LAYERS(double)

#undef AER_INSTANTIATE_LAYERS

}  // namespace aer

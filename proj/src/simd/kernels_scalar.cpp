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

#include "aer/simd/kernels.hpp"

namespace aer::simd {
namespace {

double dot(const float* a, const float* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return acc;
}

void dot4(const float* w, const float* const* x, std::size_t n, double* out) {
  for (int r = 0; r < 4; ++r) out[r] = dot(w, x[r], n);
}

void axpy(double* acc, double alpha, const float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += alpha * static_cast<double>(x[i]);
}

void axpy4(double* acc, const double* alpha, const float* const* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double v = acc[i];
    v += alpha[0] * static_cast<double>(x[0][i]);
    v += alpha[1] * static_cast<double>(x[1][i]);
    v += alpha[2] * static_cast<double>(x[2][i]);
    v += alpha[3] * static_cast<double>(x[3][i]);
    acc[i] = v;
  }
}

constexpr KernelTable kScalar{Isa::Scalar, &dot, &dot4, &axpy, &axpy4};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace aer::simd

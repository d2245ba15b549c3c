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

#include <cstddef>
#include <string_view>

// Inner loops of the dense and convolution layers. Every kernel reads 32-bit floats and
// accumulates in 64-bit doubles. The scalar table is the reference; vector tables must agree
// with it up to reassociation of the double-precision sums.

namespace aer::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  /// sum_i a[i] * b[i]
  double (*dot)(const float* a, const float* b, std::size_t n);
  /// out[r] = sum_i w[i] * x[r][i] for r in 0..3 (one weight row against four inputs)
  void (*dot4)(const float* w, const float* const* x, std::size_t n, double* out);
  /// acc[i] += alpha * x[i]
  void (*axpy)(double* acc, double alpha, const float* x, std::size_t n);
  /// acc[i] += alpha[0] x[0][i] + alpha[1] x[1][i] + alpha[2] x[2][i] + alpha[3] x[3][i], in that order
  void (*axpy4)(double* acc, const double* alpha, const float* const* x, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr unless the library was built with AVX2 support and the CPU reports AVX2 and FMA.
const KernelTable* avx2_kernels();

bool isa_available(Isa isa);

/// The table used by the layers. Defaults to the widest available ISA; the environment
/// variable AER_SIMD=scalar forces the reference path.
const KernelTable& kernels();
Isa active_isa();

/// Throws ArgumentError if `isa` is unavailable on this machine.
void select_isa(Isa isa);

/// Restores the previous selection on scope exit.
class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) : previous_(active_isa()) { select_isa(isa); }
  ~ScopedIsa() { select_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

}  // namespace aer::simd

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

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace aer {

using cplx = std::complex<double>;

/// Complex DFT of arbitrary length. Lengths whose prime factors are all small use a recursive
/// mixed-radix decomposition; anything with a prime factor above 61 goes through Bluestein's
/// chirp-z convolution on a power-of-two transform.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();
  FftPlan(FftPlan&&) noexcept;
  FftPlan& operator=(FftPlan&&) noexcept;

  std::size_t size() const { return n_; }
  bool uses_bluestein() const;

  /// X[k] = sum_n x[n] exp(-2 pi i k n / N)
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// x[n] = (1/N) sum_k X[k] exp(+2 pi i k n / N)
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

 private:
  struct Impl;
  std::size_t n_;
  std::unique_ptr<Impl> impl_;
};

/// Shared plan for length n, built on first use (per thread).
const FftPlan& fft_plan(std::size_t n);

}  // namespace aer

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

// Compiled with -mavx2 -mfma. Nothing here may run before dispatch.cpp has checked the CPU.

#include <immintrin.h>

#include "aer/simd/kernels.hpp"

namespace aer::simd {
namespace {

constexpr std::size_t kBlock = 8;

inline __m256d lo_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_castps256_ps128(v)); }
inline __m256d hi_pd(__m256 v) { return _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot(const float* a, const float* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  __m256d acc2 = _mm256_setzero_pd();
  __m256d acc3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 * kBlock <= n; i += 2 * kBlock) {
    const __m256 a0 = _mm256_loadu_ps(a + i);
    const __m256 b0 = _mm256_loadu_ps(b + i);
    const __m256 a1 = _mm256_loadu_ps(a + i + kBlock);
    const __m256 b1 = _mm256_loadu_ps(b + i + kBlock);
    acc0 = _mm256_fmadd_pd(lo_pd(a0), lo_pd(b0), acc0);
    acc1 = _mm256_fmadd_pd(hi_pd(a0), hi_pd(b0), acc1);
    acc2 = _mm256_fmadd_pd(lo_pd(a1), lo_pd(b1), acc2);
    acc3 = _mm256_fmadd_pd(hi_pd(a1), hi_pd(b1), acc3);
  }
  for (; i + kBlock <= n; i += kBlock) {
    const __m256 a0 = _mm256_loadu_ps(a + i);
    const __m256 b0 = _mm256_loadu_ps(b + i);
    acc0 = _mm256_fmadd_pd(lo_pd(a0), lo_pd(b0), acc0);
    acc1 = _mm256_fmadd_pd(hi_pd(a0), hi_pd(b0), acc1);
  }
  double sum = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
  for (; i < n; ++i) sum += static_cast<double>(a[i]) * static_cast<double>(b[i]);
  return sum;
}

void dot4(const float* w, const float* const* x, std::size_t n, double* out) {
  __m256d lo[4] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  __m256d hi[4] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256 wv = _mm256_loadu_ps(w + i);
    const __m256d wl = lo_pd(wv);
    const __m256d wh = hi_pd(wv);
    for (int r = 0; r < 4; ++r) {
      const __m256 xv = _mm256_loadu_ps(x[r] + i);
      lo[r] = _mm256_fmadd_pd(wl, lo_pd(xv), lo[r]);
      hi[r] = _mm256_fmadd_pd(wh, hi_pd(xv), hi[r]);
    }
  }
  for (int r = 0; r < 4; ++r) {
    double sum = hsum(_mm256_add_pd(lo[r], hi[r]));
    for (std::size_t j = i; j < n; ++j) sum += static_cast<double>(w[j]) * static_cast<double>(x[r][j]);
    out[r] = sum;
  }
}

void axpy(double* acc, double alpha, const float* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256 xv = _mm256_loadu_ps(x + i);
    _mm256_storeu_pd(acc + i, _mm256_fmadd_pd(av, lo_pd(xv), _mm256_loadu_pd(acc + i)));
    _mm256_storeu_pd(acc + i + 4, _mm256_fmadd_pd(av, hi_pd(xv), _mm256_loadu_pd(acc + i + 4)));
  }
  for (; i < n; ++i) acc[i] += alpha * static_cast<double>(x[i]);
}

void axpy4(double* acc, const double* alpha, const float* const* x, std::size_t n) {
  const __m256d a0 = _mm256_set1_pd(alpha[0]);
  const __m256d a1 = _mm256_set1_pd(alpha[1]);
  const __m256d a2 = _mm256_set1_pd(alpha[2]);
  const __m256d a3 = _mm256_set1_pd(alpha[3]);
  std::size_t i = 0;
  for (; i + kBlock <= n; i += kBlock) {
    const __m256 x0 = _mm256_loadu_ps(x[0] + i);
    const __m256 x1 = _mm256_loadu_ps(x[1] + i);
    const __m256 x2 = _mm256_loadu_ps(x[2] + i);
    const __m256 x3 = _mm256_loadu_ps(x[3] + i);
    __m256d l = _mm256_loadu_pd(acc + i);
    __m256d h = _mm256_loadu_pd(acc + i + 4);
    l = _mm256_fmadd_pd(a0, lo_pd(x0), l);
    h = _mm256_fmadd_pd(a0, hi_pd(x0), h);
    l = _mm256_fmadd_pd(a1, lo_pd(x1), l);
    h = _mm256_fmadd_pd(a1, hi_pd(x1), h);
    l = _mm256_fmadd_pd(a2, lo_pd(x2), l);
    h = _mm256_fmadd_pd(a2, hi_pd(x2), h);
    l = _mm256_fmadd_pd(a3, lo_pd(x3), l);
    h = _mm256_fmadd_pd(a3, hi_pd(x3), h);
    _mm256_storeu_pd(acc + i, l);
    _mm256_storeu_pd(acc + i + 4, h);
  }
  for (; i < n; ++i) {
    double v = acc[i];
    v += alpha[0] * static_cast<double>(x[0][i]);
    v += alpha[1] * static_cast<double>(x[1][i]);
    v += alpha[2] * static_cast<double>(x[2][i]);
    v += alpha[3] * static_cast<double>(x[3][i]);
    acc[i] = v;
  }
}

constexpr KernelTable kAvx2{Isa::Avx2, &dot, &dot4, &axpy, &axpy4};

}  // namespace

const KernelTable& avx2_table() { return kAvx2; }

}  // namespace aer::simd

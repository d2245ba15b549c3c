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

#include "aer/fft.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "aer/errors.hpp"

namespace aer {
namespace {

constexpr std::size_t kMaxDirectRadix = 61;

std::vector<std::size_t> factorize(std::size_t n) {
  // Radix-4 stages first, then the remaining primes in increasing order.
  std::vector<std::size_t> factors;
  while (n % 4 == 0) {
    factors.push_back(4);
    n /= 4;
  }
  for (std::size_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

class MixedRadix {
 public:
  explicit MixedRadix(std::size_t n) : n_(n), factors_(factorize(n)), twiddles_(n) {
    for (std::size_t k = 0; k < n; ++k) twiddles_[k] = std::polar(1.0, -2.0 * M_PI * static_cast<double>(k) / n);
    std::size_t maxp = 1;
    for (auto p : factors_) maxp = std::max(maxp, p);
    scratch_size_ = maxp;
  }

  std::size_t max_factor() const {
    std::size_t maxp = 1;
    for (auto p : factors_) maxp = std::max(maxp, p);
    return maxp;
  }

  void run(const cplx* in, cplx* out) const {
    if (factors_.empty()) {  // n == 1
      out[0] = in[0];
      return;
    }
    std::vector<cplx> scratch(scratch_size_);
    work(out, in, 1, 0, scratch);
  }

 private:
  // Decimation in time: split `in` (stride fstride) into p interleaved sub-sequences of
  // length m, transform each into out[q*m .. q*m+m), then combine with radix-p butterflies.
  void work(cplx* out, const cplx* in, std::size_t fstride, std::size_t stage,
            std::vector<cplx>& scratch) const {
    const std::size_t p = factors_[stage];
    std::size_t m = 1;
    for (std::size_t s = stage + 1; s < factors_.size(); ++s) m *= factors_[s];

    if (m == 1) {
      for (std::size_t j = 0; j < p; ++j) out[j] = in[j * fstride];
    } else {
      for (std::size_t q = 0; q < p; ++q) work(out + q * m, in + q * fstride, fstride * p, stage + 1, scratch);
    }

    switch (p) {
      case 2: butterfly2(out, fstride, m); break;
      case 4: butterfly4(out, fstride, m); break;
      default: butterfly_generic(out, fstride, m, p, scratch); break;
    }
  }

  void butterfly2(cplx* out, std::size_t fstride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
      const cplx t = out[k + m] * twiddles_[k * fstride];
      out[k + m] = out[k] - t;
      out[k] += t;
    }
  }

  void butterfly4(cplx* out, std::size_t fstride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
      const cplx a0 = out[k];
      const cplx a1 = out[k + m] * twiddles_[k * fstride];
      const cplx a2 = out[k + 2 * m] * twiddles_[2 * k * fstride];
      const cplx a3 = out[k + 3 * m] * twiddles_[3 * k * fstride];
      const cplx s02 = a0 + a2, d02 = a0 - a2;
      const cplx s13 = a1 + a3, d13 = a1 - a3;
      const cplx d13_rot(d13.imag(), -d13.real());  // -i * d13
      out[k] = s02 + s13;
      out[k + m] = d02 + d13_rot;
      out[k + 2 * m] = s02 - s13;
      out[k + 3 * m] = d02 - d13_rot;
    }
  }

  // Twiddle and radix-p DFT folded together: output kk picks up W_N^(q * kk * fstride).
  void butterfly_generic(cplx* out, std::size_t fstride, std::size_t m, std::size_t p,
                         std::vector<cplx>& scratch) const {
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t q = 0; q < p; ++q) scratch[q] = out[k + q * m];
      for (std::size_t u = 0; u < p; ++u) {
        const std::size_t kk = k + u * m;
        cplx acc = scratch[0];
        std::size_t idx = 0;
        const std::size_t step = kk * fstride % n_;
        for (std::size_t q = 1; q < p; ++q) {
          idx += step;
          if (idx >= n_) idx -= n_;
          acc += scratch[q] * twiddles_[idx];
        }
        out[kk] = acc;
      }
    }
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<cplx> twiddles_;
  std::size_t scratch_size_ = 1;
};

}  // namespace

struct FftPlan::Impl {
  std::unique_ptr<MixedRadix> direct;
  // Bluestein state
  std::unique_ptr<MixedRadix> conv;
  std::size_t conv_n = 0;
  std::vector<cplx> chirp;        // exp(-i pi n^2 / N)
  std::vector<cplx> kernel_fft;   // FFT of conj chirp, wrapped
};

FftPlan::FftPlan(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
  if (n == 0) throw ArgumentError("FftPlan: length must be positive");
  auto direct = std::make_unique<MixedRadix>(n);
  if (direct->max_factor() <= kMaxDirectRadix) {
    impl_->direct = std::move(direct);
    return;
  }
  const std::size_t m = next_pow2(2 * n - 1);
  impl_->conv_n = m;
  impl_->conv = std::make_unique<MixedRadix>(m);
  impl_->chirp.resize(n);
  const std::size_t two_n = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    // i^2 mod 2N keeps the angle small for large i.
    const std::size_t sq = (i * i) % two_n;
    impl_->chirp[i] = std::polar(1.0, -M_PI * static_cast<double>(sq) / static_cast<double>(n));
  }
  std::vector<cplx> b(m, cplx{});
  b[0] = std::conj(impl_->chirp[0]);
  for (std::size_t i = 1; i < n; ++i) {
    b[i] = std::conj(impl_->chirp[i]);
    b[m - i] = std::conj(impl_->chirp[i]);
  }
  impl_->kernel_fft.resize(m);
  impl_->conv->run(b.data(), impl_->kernel_fft.data());
}

FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

bool FftPlan::uses_bluestein() const { return impl_->direct == nullptr; }

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw ShapeError("FftPlan::forward: length mismatch");
  if (impl_->direct) {
    if (in.data() == out.data()) {
      std::vector<cplx> tmp(in.begin(), in.end());
      impl_->direct->run(tmp.data(), out.data());
    } else {
      impl_->direct->run(in.data(), out.data());
    }
    return;
  }
  const std::size_t m = impl_->conv_n;
  std::vector<cplx> a(m, cplx{});
  for (std::size_t i = 0; i < n_; ++i) a[i] = in[i] * impl_->chirp[i];
  std::vector<cplx> fa(m);
  impl_->conv->run(a.data(), fa.data());
  for (std::size_t i = 0; i < m; ++i) fa[i] = std::conj(fa[i] * impl_->kernel_fft[i]);
  // inverse via conjugation: ifft(y) = conj(fft(conj(y))) / m
  impl_->conv->run(fa.data(), a.data());
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < n_; ++k) out[k] = std::conj(a[k]) * scale * impl_->chirp[k];
}

void FftPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw ShapeError("FftPlan::inverse: length mismatch");
  std::vector<cplx> tmp(n_);
  for (std::size_t i = 0; i < n_; ++i) tmp[i] = std::conj(in[i]);
  forward(tmp, out);
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v = std::conj(v) * scale;
}

const FftPlan& fft_plan(std::size_t n) {
  thread_local std::map<std::size_t, FftPlan> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, FftPlan(n)).first;
  return it->second;
}

}  // namespace aer

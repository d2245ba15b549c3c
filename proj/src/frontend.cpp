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

#include "aer/frontend.hpp"

#include <cmath>

#include "aer/errors.hpp"

namespace aer {

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::Time: return "time";
    case FeatureMode::Freq: return "freq";
    case FeatureMode::FreqMag: return "freq-mag";
    case FeatureMode::FreqPhase: return "freq-phase";
  }
  return "?";
}

FeatureMode parse_feature_mode(std::string_view name) {
  if (name == "time") return FeatureMode::Time;
  if (name == "freq") return FeatureMode::Freq;
  if (name == "freq-mag") return FeatureMode::FreqMag;
  if (name == "freq-phase") return FeatureMode::FreqPhase;
  throw ArgumentError("unknown feature mode '" + std::string(name) + "'");
}

std::size_t feature_length(FeatureMode mode, std::size_t window) {
  switch (mode) {
    case FeatureMode::Time:
    case FeatureMode::Freq: return window;
    case FeatureMode::FreqMag:
    case FeatureMode::FreqPhase: return window / 2;
  }
  return window;
}

namespace {

std::size_t whole_samples(double ms, double rate, const char* what) {
  const double exact = ms * rate / 1000.0;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, exact))
    throw ArgumentError(std::string("framing: ") + what + " is not a whole number of samples");
  return static_cast<std::size_t>(rounded);
}

}  // namespace

void FramingConfig::validate() const {
  if (!(sample_rate > 0.0)) throw ArgumentError("framing: sample rate must be positive");
  if (!(step_ms > 0.0)) throw ArgumentError("framing: step must be positive");
  if (window_ms < step_ms) throw ArgumentError("framing: window shorter than step");
  if (whole_samples(step_ms, sample_rate, "step") == 0) throw ArgumentError("framing: step rounds to zero samples");
  whole_samples(window_ms, sample_rate, "window");
}

std::size_t FramingConfig::window_samples() const { return whole_samples(window_ms, sample_rate, "window"); }
std::size_t FramingConfig::step_samples() const { return whole_samples(step_ms, sample_rate, "step"); }

std::size_t frame_count(std::size_t length, std::size_t window, std::size_t step) {
  if (length < window) return 1;
  return (length - window) / step + 1;
}

std::vector<std::vector<float>> extract_frames(const AudioClip& clip, const FramingConfig& cfg) {
  cfg.validate();
  if (std::abs(clip.sample_rate - cfg.sample_rate) > 1e-9)
    throw ArgumentError("extract_frames: clip rate " + std::to_string(clip.sample_rate) +
                        " differs from framing rate " + std::to_string(cfg.sample_rate));
  const std::size_t w = cfg.window_samples();
  const std::size_t s = cfg.step_samples();
  const std::size_t n = frame_count(clip.samples.size(), w, s);
  std::vector<std::vector<float>> frames(n, std::vector<float>(w, 0.0f));
  for (std::size_t f = 0; f < n; ++f) {
    const std::size_t start = f * s;
    const std::size_t avail = std::min(w, clip.samples.size() - start);
    std::copy_n(clip.samples.begin() + static_cast<std::ptrdiff_t>(start), avail, frames[f].begin());
  }
  return frames;
}

std::vector<double> hamming_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  const double denom = static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * static_cast<double>(i) / denom);
  return w;
}

std::vector<double> hamming(std::span<const float> window) {
  // Cached for the common frame length.
  thread_local std::vector<double> coeffs;
  if (coeffs.size() != window.size()) coeffs = hamming_window(window.size());
  std::vector<double> out(window.size());
  for (std::size_t i = 0; i < window.size(); ++i) out[i] = window[i] * coeffs[i];
  return out;
}

std::vector<cplx> dft_real(std::span<const double> frame) {
  const FftPlan& plan = fft_plan(frame.size());
  std::vector<cplx> in(frame.begin(), frame.end());
  std::vector<cplx> out(frame.size());
  plan.forward(in, out);
  return out;
}

double bin_phase(const cplx& x) {
  if (x.real() == 0.0 && x.imag() == 0.0) return 0.0;
  const double a = std::atan2(x.imag(), x.real());
  return a == -M_PI ? M_PI : a;
}

HalfSpectrum half_spectrum(std::span<const double> windowed) {
  const std::size_t n = windowed.size();
  if (n < 2 || n % 2 != 0) throw ShapeError("half_spectrum: frame length must be even");
  const auto spec = dft_real(windowed);
  HalfSpectrum h;
  const std::size_t half = n / 2;
  h.magnitude.resize(half);
  h.phase.resize(half);
  for (std::size_t k = 0; k < half; ++k) {
    h.magnitude[k] = std::abs(spec[k]);
    h.phase[k] = bin_phase(spec[k]);
  }
  h.nyquist = spec[half].real();
  return h;
}

std::vector<double> reconstruct_frame(const HalfSpectrum& half) {
  const std::size_t h = half.magnitude.size();
  const std::size_t n = 2 * h;
  std::vector<cplx> spec(n);
  for (std::size_t k = 0; k < h; ++k) spec[k] = std::polar(half.magnitude[k], half.phase[k]);
  spec[h] = cplx(half.nyquist, 0.0);
  for (std::size_t k = 1; k < h; ++k) spec[n - k] = std::conj(spec[k]);
  std::vector<cplx> time(n);
  fft_plan(n).inverse(spec, time);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = time[i].real();
  return out;
}

FeatureFrame freq_features(std::span<const double> windowed, FeatureMode mode) {
  if (mode == FeatureMode::Time) throw ArgumentError("freq_features: time mode has no spectrum");
  const HalfSpectrum h = half_spectrum(windowed);
  const std::size_t half = h.magnitude.size();
  FeatureFrame f;
  f.mode = mode;
  f.values.reserve(feature_length(mode, windowed.size()));
  if (mode == FeatureMode::Freq || mode == FeatureMode::FreqMag)
    for (double m : h.magnitude) f.values.push_back(static_cast<float>(m));
  if (mode == FeatureMode::Freq || mode == FeatureMode::FreqPhase)
    for (std::size_t k = 0; k < half; ++k) f.values.push_back(static_cast<float>(h.phase[k]));
  return f;
}

FeatureFrame frame_features(std::span<const float> raw_window, FeatureMode mode) {
  if (mode == FeatureMode::Time) {
    FeatureFrame f;
    f.mode = mode;
    f.values.assign(raw_window.begin(), raw_window.end());
    return f;
  }
  const auto windowed = hamming(raw_window);
  return freq_features(windowed, mode);
}

FeatureMatrix clip_features(const AudioClip& clip, FeatureMode mode, const FramingConfig& cfg) {
  const auto frames = extract_frames(clip, cfg);
  FeatureMatrix m;
  m.rows = frames.size();
  m.cols = feature_length(mode, cfg.window_samples());
  m.values.resize(m.rows * m.cols);
  for (std::size_t r = 0; r < m.rows; ++r) {
    const FeatureFrame f = frame_features(frames[r], mode);
    std::copy(f.values.begin(), f.values.end(), m.values.begin() + static_cast<std::ptrdiff_t>(r * m.cols));
  }
  return m;
}

}  // namespace aer

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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aer/audio.hpp"
#include "aer/fft.hpp"

namespace aer {

enum class FeatureMode { Time, Freq, FreqMag, FreqPhase };

std::string_view to_string(FeatureMode mode);
FeatureMode parse_feature_mode(std::string_view name);

/// Values per frame for a given window length: N for time and freq, N/2 for the half modes.
std::size_t feature_length(FeatureMode mode, std::size_t window = 2400);

struct FramingConfig {
  double window_ms = 150.0;
  double step_ms = 5.0;
  double sample_rate = 16000.0;

  /// Throws ArgumentError unless window >= step > 0 and both land on whole samples.
  void validate() const;
  std::size_t window_samples() const;
  std::size_t step_samples() const;
};

struct FeatureFrame {
  std::vector<float> values;
  FeatureMode mode = FeatureMode::Time;
  std::string clip_id;
  std::size_t frame_index = 0;
};

/// floor((L - W) / S) + 1 for L >= W, otherwise 1 (the short clip is zero-padded).
std::size_t frame_count(std::size_t length, std::size_t window, std::size_t step);

/// Rectangular sliding windows in ascending start order. Trailing samples that do not fill a
/// whole window are dropped.
std::vector<std::vector<float>> extract_frames(const AudioClip& clip, const FramingConfig& cfg);

/// Symmetric Hamming coefficients 0.54 - 0.46 cos(2 pi n / (N - 1)).
std::vector<double> hamming_window(std::size_t n);
std::vector<double> hamming(std::span<const float> window);

std::vector<cplx> dft_real(std::span<const double> frame);

/// Bins 0 .. N/2 - 1 in polar form plus the real Nyquist bin, which together determine the
/// full spectrum of a real frame.
struct HalfSpectrum {
  std::vector<double> magnitude;
  std::vector<double> phase;
  double nyquist = 0.0;
};

/// atan2 mapped onto (-pi, pi], with the phase of an exactly-zero bin taken as 0.
double bin_phase(const cplx& x);

HalfSpectrum half_spectrum(std::span<const double> windowed);

/// Inverse of half_spectrum() via conjugate symmetry and the inverse transform.
std::vector<double> reconstruct_frame(const HalfSpectrum& half);

/// Magnitude and/or phase of a Hamming-weighted window, laid out per `mode`.
FeatureFrame freq_features(std::span<const double> windowed, FeatureMode mode = FeatureMode::Freq);

/// Full frontend for one window of raw samples.
FeatureFrame frame_features(std::span<const float> raw_window, FeatureMode mode);

/// Every frame of a clip, row-major [frames x feature_length].
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> values;
};

FeatureMatrix clip_features(const AudioClip& clip, FeatureMode mode, const FramingConfig& cfg = {});

}  // namespace aer

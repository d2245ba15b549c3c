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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aer/rng.hpp"

namespace aer {

struct ManifestEntry {
  std::string path;  // as written in the manifest; relative paths resolve against Manifest::base_dir
  int label = -1;    // index into Manifest::class_names
  std::optional<int> fold;
};

struct Manifest {
  std::vector<ManifestEntry> entries;
  std::vector<std::string> class_names;
  std::filesystem::path base_dir;

  std::size_t num_classes() const { return class_names.size(); }
  /// Dense labels, unique paths, non-negative folds. Throws ArgumentError.
  void validate() const;
  std::filesystem::path resolve(const ManifestEntry& e) const;
  /// True when every entry carries a fold.
  bool has_folds() const;
  /// Orders entries by class, then by path.
  void sort_canonical();
};

/// CSV with header path,label,fold. Labels are class names; the class table is their sorted
/// set (numerically when every name is an integer). Fold may be blank.
Manifest parse_manifest(std::string_view text, std::filesystem::path base_dir = {});
Manifest load_manifest(const std::filesystem::path& path);
std::string manifest_csv(const Manifest& m);
void save_manifest(const Manifest& m, const std::filesystem::path& path);

enum class SplitProtocol { Alternate, KFold };

struct SplitPlan {
  SplitProtocol protocol = SplitProtocol::Alternate;
  std::size_t folds = 0;  // K for kfold
  int held_out = -1;      // test fold for kfold
  std::vector<ManifestEntry> train;
  std::vector<ManifestEntry> test;
  /// Non-fatal observations, such as classes with no entries.
  std::vector<std::string> warnings;
};

/// Within each class, sorted by path: even positions train, odd positions test.
SplitPlan alternate_split(const Manifest& m);
/// Entries of fold `held_out` test, the rest train. Requires folds on every entry and k >= 2.
SplitPlan kfold_split(const Manifest& m, std::size_t k, int held_out);

enum class RecipeKind { Tone, BandNoise, AmTone, Chirp };

std::string_view to_string(RecipeKind k);

struct Recipe {
  std::string name;
  RecipeKind kind = RecipeKind::Tone;
  double freq_hz = 440.0;  // tone/carrier frequency, band centre, or chirp start
  double param = 0.0;      // band width, modulation rate, or chirp end frequency
  double jitter_hz = 0.0;  // per-clip uniform shift of all frequencies in [-jitter, +jitter]

  /// Frequency interval holding the recipe's energy.
  std::pair<double, double> band() const;
};

/// Tone 440 Hz (exact), band noise at 2 kHz, AM tone at 1.2 kHz, chirp 3 to 4 kHz, then extra
/// tones and AM tones spaced 250 Hz apart from 4.5 kHz. Every class but the first jitters its
/// frequencies per clip, so a class is a frequency region rather than one waveform. Names carry a two-digit index prefix so the manifest's sorted
/// class table keeps recipe order. At most 15 classes.
std::vector<Recipe> default_recipes(std::size_t classes);

struct SynthConfig {
  std::vector<Recipe> recipes = default_recipes(4);
  std::size_t clips_per_class = 40;
  double clip_seconds = 1.0;
  double snr_db = 10.0;
  std::uint64_t seed = 0;
  std::size_t folds = 5;
  std::uint32_t sample_rate = 16000;

  void validate() const;
};

/// One clip of `samples` values, peak 0.9, with white Gaussian noise at `snr_db`.
std::vector<float> synth_clip(const Recipe& r, std::size_t samples, std::uint32_t sample_rate, double snr_db, Rng& rng);

/// In-memory corpus: clip c of class k is drawn from a generator seeded by (seed, k, c).
struct SynthClip {
  std::string path;
  int label = -1;
  int fold = -1;
  std::vector<float> samples;
};
std::vector<SynthClip> synth_clips(const SynthConfig& cfg);

/// Writes <out>/<class>/<class>_NNN.wav and <out>/manifest.csv. Folds cycle within each class.
Manifest synth_corpus(const SynthConfig& cfg, const std::filesystem::path& out_dir);

/// Index of the recipe with the largest mean spectral power per hertz inside its band.
std::size_t band_energy_classify(std::span<const float> samples, double sample_rate, const std::vector<Recipe>& recipes);

}  // namespace aer

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

#include "aer/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "aer/audio.hpp"
#include "aer/csv.hpp"
#include "aer/errors.hpp"
#include "aer/fft.hpp"

namespace aer {

namespace {

std::optional<long long> as_integer(std::string_view s) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void Manifest::validate() const {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (e.label < 0 || static_cast<std::size_t>(e.label) >= class_names.size())
      throw ArgumentError("manifest: entry '" + e.path + "' has label outside the class table");
    if (!seen.insert(e.path).second) throw ArgumentError("manifest: duplicate path '" + e.path + "'");
    if (e.fold && *e.fold < 0) throw ArgumentError("manifest: negative fold for '" + e.path + "'");
  }
}

std::filesystem::path Manifest::resolve(const ManifestEntry& e) const {
  std::filesystem::path p(e.path);
  return p.is_absolute() ? p : base_dir / p;
}

bool Manifest::has_folds() const {
  return !entries.empty() && std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.fold.has_value(); });
}

void Manifest::sort_canonical() {
  std::stable_sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.label != b.label ? a.label < b.label : a.path < b.path;
  });
}

Manifest parse_manifest(std::string_view text, std::filesystem::path base_dir) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ArgumentError("manifest: missing header row");
  const auto& header = rows.front();
  int col_path = -1, col_label = -1, col_fold = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string h = trim(header[i]);
    if (h == "path") col_path = static_cast<int>(i);
    else if (h == "label") col_label = static_cast<int>(i);
    else if (h == "fold") col_fold = static_cast<int>(i);
  }
  if (col_path < 0 || col_label < 0) throw ArgumentError("manifest: header must contain path and label columns");

  struct Raw {
    std::string path, label;
    std::optional<int> fold;
  };
  std::vector<Raw> raw;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto field = [&](int c) { return c >= 0 && static_cast<std::size_t>(c) < row.size() ? trim(row[c]) : std::string{}; };
    Raw e{field(col_path), field(col_label), std::nullopt};
    if (e.path.empty()) throw ArgumentError("manifest: row " + std::to_string(r + 1) + " has an empty path");
    if (e.label.empty()) throw ArgumentError("manifest: row " + std::to_string(r + 1) + " has an empty label");
    const std::string fold = field(col_fold);
    if (!fold.empty()) {
      const auto v = as_integer(fold);
      if (!v || *v < 0 || *v > 1'000'000)
        throw ArgumentError("manifest: row " + std::to_string(r + 1) + " has invalid fold '" + fold + "'");
      e.fold = static_cast<int>(*v);
    }
    raw.push_back(std::move(e));
  }

  std::set<std::string> names;
  for (const auto& e : raw) names.insert(e.label);
  std::vector<std::string> table(names.begin(), names.end());
  if (std::all_of(table.begin(), table.end(), [](const auto& s) { return as_integer(s).has_value(); }))
    std::sort(table.begin(), table.end(), [](const auto& a, const auto& b) { return *as_integer(a) < *as_integer(b); });
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < table.size(); ++i) index[table[i]] = static_cast<int>(i);

  Manifest m;
  m.base_dir = std::move(base_dir);
  m.class_names = std::move(table);
  for (auto& e : raw) m.entries.push_back({std::move(e.path), index.at(e.label), e.fold});
  m.validate();
  return m;
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open manifest " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path.parent_path());
}

std::string manifest_csv(const Manifest& m) {
  m.validate();
  std::string out = "path,label,fold\n";
  for (const auto& e : m.entries) {
    out += csv::escape(e.path) + ',' + csv::escape(m.class_names[e.label]) + ',';
    if (e.fold) out += std::to_string(*e.fold);
    out += '\n';
  }
  return out;
}

void save_manifest(const Manifest& m, const std::filesystem::path& path) {
  const std::string text = manifest_csv(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << text;
  if (!out) throw IoError("failed writing manifest " + path.string());
}

SplitPlan alternate_split(const Manifest& m) {
  m.validate();
  SplitPlan plan;
  plan.protocol = SplitProtocol::Alternate;
  std::vector<std::vector<const ManifestEntry*>> by_class(m.num_classes());
  for (const auto& e : m.entries) by_class[e.label].push_back(&e);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& v = by_class[c];
    if (v.empty()) plan.warnings.push_back("class '" + m.class_names[c] + "' has no entries");
    std::sort(v.begin(), v.end(), [](const auto* a, const auto* b) { return a->path < b->path; });
    for (std::size_t i = 0; i < v.size(); ++i) (i % 2 == 0 ? plan.train : plan.test).push_back(*v[i]);
  }
  return plan;
}

SplitPlan kfold_split(const Manifest& m, std::size_t k, int held_out) {
  m.validate();
  if (k < 2) throw ArgumentError("kfold_split: need at least 2 folds, got " + std::to_string(k));
  if (held_out < 0 || static_cast<std::size_t>(held_out) >= k)
    throw ArgumentError("kfold_split: held-out fold " + std::to_string(held_out) + " outside 0.." + std::to_string(k - 1));
  SplitPlan plan;
  plan.protocol = SplitProtocol::KFold;
  plan.folds = k;
  plan.held_out = held_out;
  for (const auto& e : m.entries) {
    if (!e.fold) throw ArgumentError("kfold_split: manifest entry '" + e.path + "' has no fold");
    if (static_cast<std::size_t>(*e.fold) >= k)
      throw ArgumentError("kfold_split: entry '" + e.path + "' has fold " + std::to_string(*e.fold) + " but k = " +
                          std::to_string(k));
    (*e.fold == held_out ? plan.test : plan.train).push_back(e);
  }
  return plan;
}

std::string_view to_string(RecipeKind k) {
  switch (k) {
    case RecipeKind::Tone: return "tone";
    case RecipeKind::BandNoise: return "noise";
    case RecipeKind::AmTone: return "am";
    case RecipeKind::Chirp: return "chirp";
  }
  return "?";
}

std::pair<double, double> Recipe::band() const {
  const double j = jitter_hz;
  switch (kind) {
    case RecipeKind::Tone: return {freq_hz - j - 25.0, freq_hz + j + 25.0};
    case RecipeKind::BandNoise: return {freq_hz - j - param / 2, freq_hz + j + param / 2};
    case RecipeKind::AmTone: return {freq_hz - j - param - 25.0, freq_hz + j + param + 25.0};
    case RecipeKind::Chirp: return {std::min(freq_hz, param) - j, std::max(freq_hz, param) + j};
  }
  return {freq_hz, freq_hz};
}

std::vector<Recipe> default_recipes(std::size_t classes) {
  if (classes < 2 || classes > 15) throw ArgumentError("synthetic corpus supports 2 to 15 classes, got " + std::to_string(classes));
  std::vector<Recipe> r = {
      {"00_tone440", RecipeKind::Tone, 440.0, 0.0},
      {"01_noise2000", RecipeKind::BandNoise, 2000.0, 400.0, 200.0},
      {"02_am1200", RecipeKind::AmTone, 1200.0, 8.0, 150.0},
      {"03_chirp3000", RecipeKind::Chirp, 3000.0, 4000.0, 300.0},
  };
  for (std::size_t k = 4; k < classes; ++k) {
    const double f = 4500.0 + 250.0 * static_cast<double>(k - 4);
    char prefix[8];
    std::snprintf(prefix, sizeof prefix, "%02zu_", k);
    if (k % 2 == 0)
      r.push_back({prefix + ("tone" + std::to_string(static_cast<int>(f))), RecipeKind::Tone, f, 0.0, 50.0});
    else
      r.push_back({prefix + ("am" + std::to_string(static_cast<int>(f))), RecipeKind::AmTone, f, 8.0, 50.0});
  }
  r.resize(classes);
  return r;
}

void SynthConfig::validate() const {
  if (recipes.size() < 2) throw ArgumentError("synthetic corpus needs at least 2 classes");
  if (clips_per_class < 1) throw ArgumentError("synthetic corpus needs at least 1 clip per class");
  if (!(clip_seconds > 0.0)) throw ArgumentError("clip length must be positive");
  if (folds < 1) throw ArgumentError("fold count must be at least 1");
  if (sample_rate < 1) throw ArgumentError("sample rate must be positive");
  for (const auto& r : recipes)
    if (r.band().second >= sample_rate / 2.0 || r.band().first <= 0.0)
      throw ArgumentError("recipe '" + r.name + "' lies outside (0, Nyquist)");
}

std::vector<float> synth_clip(const Recipe& r, std::size_t samples, std::uint32_t sample_rate, double snr_db, Rng& rng) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const double fs = sample_rate;
  std::vector<double> x(samples, 0.0);
  const double shift = r.jitter_hz * (2.0 * uniform01(rng) - 1.0);
  Recipe j = r;
  j.freq_hz += shift;
  if (r.kind == RecipeKind::Chirp) j.param += shift;
  j.jitter_hz = 0.0;
  const double phase = kTwoPi * uniform01(rng);
  switch (r.kind) {
    case RecipeKind::Tone:
      for (std::size_t n = 0; n < samples; ++n) x[n] = std::sin(kTwoPi * j.freq_hz * n / fs + phase);
      break;
    case RecipeKind::AmTone: {
      const double mphase = kTwoPi * uniform01(rng);
      for (std::size_t n = 0; n < samples; ++n)
        x[n] = (1.0 + 0.8 * std::sin(kTwoPi * j.param * n / fs + mphase)) * std::sin(kTwoPi * j.freq_hz * n / fs + phase);
      break;
    }
    case RecipeKind::Chirp: {
      const double duration = samples / fs;
      const double rate = (j.param - j.freq_hz) / duration;
      for (std::size_t n = 0; n < samples; ++n) {
        const double t = n / fs;
        x[n] = std::sin(kTwoPi * (j.freq_hz * t + 0.5 * rate * t * t) + phase);
      }
      break;
    }
    case RecipeKind::BandNoise: {
      std::vector<cplx> buf(samples), spec(samples);
      for (auto& v : buf) v = gaussian(rng);
      const auto& plan = fft_plan(samples);
      plan.forward(buf, spec);
      const auto [lo, hi] = j.band();
      for (std::size_t k = 0; k < samples; ++k) {
        const double f = std::min(k, samples - k) * fs / samples;
        if (f < lo || f > hi) spec[k] = 0.0;
      }
      plan.inverse(spec, buf);
      for (std::size_t n = 0; n < samples; ++n) x[n] = buf[n].real();
      break;
    }
  }
  double power = 0.0;
  for (double v : x) power += v * v;
  power /= std::max<std::size_t>(samples, 1);
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  for (auto& v : x) v += sigma * gaussian(rng);
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  std::vector<float> out(samples);
  const double scale = peak > 0.0 ? 0.9 / peak : 0.0;
  for (std::size_t n = 0; n < samples; ++n) out[n] = static_cast<float>(x[n] * scale);
  return out;
}

std::vector<SynthClip> synth_clips(const SynthConfig& cfg) {
  cfg.validate();
  const auto samples = static_cast<std::size_t>(std::llround(cfg.clip_seconds * cfg.sample_rate));
  std::vector<SynthClip> clips;
  for (std::size_t k = 0; k < cfg.recipes.size(); ++k) {
    const auto& r = cfg.recipes[k];
    for (std::size_t c = 0; c < cfg.clips_per_class; ++c) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                        static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(c)};
      Rng rng(seq);
      char name[64];
      std::snprintf(name, sizeof name, "%s_%03zu.wav", r.name.c_str(), c);
      clips.push_back({r.name + "/" + name, static_cast<int>(k), static_cast<int>(c % cfg.folds),
                       synth_clip(r, samples, cfg.sample_rate, cfg.snr_db, rng)});
    }
  }
  return clips;
}

Manifest synth_corpus(const SynthConfig& cfg, const std::filesystem::path& out_dir) {
  cfg.validate();
  std::set<std::string> names;
  for (const auto& r : cfg.recipes)
    if (!names.insert(r.name).second) throw ArgumentError("duplicate recipe name '" + r.name + "'");
  Manifest m;
  m.base_dir = out_dir;
  for (const auto& r : cfg.recipes) m.class_names.push_back(r.name);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  for (const auto& r : cfg.recipes) {
    std::filesystem::create_directories(out_dir / r.name, ec);
    if (ec) throw IoError("cannot create " + (out_dir / r.name).string() + ": " + ec.message());
  }
  for (auto& clip : synth_clips(cfg)) {
    write_wav_file(out_dir / clip.path, clip.samples, cfg.sample_rate);
    m.entries.push_back({clip.path, clip.label, clip.fold});
  }
  save_manifest(m, out_dir / "manifest.csv");
  return load_manifest(out_dir / "manifest.csv");
}

std::size_t band_energy_classify(std::span<const float> samples, double sample_rate, const std::vector<Recipe>& recipes) {
  if (samples.empty() || recipes.empty()) throw ArgumentError("band_energy_classify: empty input");
  const std::size_t n = samples.size();
  std::vector<cplx> in(n), out(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = samples[i];
  fft_plan(n).forward(in, out);
  std::size_t best = 0;
  double best_density = -1.0;
  for (std::size_t r = 0; r < recipes.size(); ++r) {
    const auto [lo, hi] = recipes[r].band();
    double energy = 0.0;
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double f = k * sample_rate / n;
      if (f >= lo && f <= hi) energy += std::norm(out[k]);
    }
    const double density = energy / (hi - lo);
    if (density > best_density) {
      best_density = density;
      best = r;
    }
  }
  return best;
}

}  // namespace aer

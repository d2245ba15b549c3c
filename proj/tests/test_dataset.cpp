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

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include "aer/audio.hpp"
#include "aer/dataset.hpp"
#include "aer/errors.hpp"
#include "aer/pipeline.hpp"
#include "test_util.hpp"

using namespace aer;
using aer::testing::TempDir;

namespace {

std::vector<std::string> paths(const std::vector<ManifestEntry>& v) {
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(e.path);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Manifest manifest_with(std::size_t classes, std::size_t per_class, std::size_t folds) {
  std::string text = "path,label,fold\n";
  for (std::size_t c = 0; c < classes; ++c)
    for (std::size_t i = 0; i < per_class; ++i)
      text += "c" + std::to_string(c) + "/f" + std::to_string(1000 + i) + ".wav,class" + std::to_string(c) + "," +
              std::to_string(i % folds) + "\n";
  return parse_manifest(text);
}

}  // namespace

TEST_CASE("manifest parses and round-trips") {
  const auto m = parse_manifest("path,label,fold\nb.wav,dog,1\na.wav,cat,0\nc.wav,dog,\n", "/data");
  CHECK(m.class_names == std::vector<std::string>{"cat", "dog"});
  REQUIRE(m.entries.size() == 3);
  CHECK(m.entries[0].label == 1);
  CHECK(m.entries[0].fold == 1);
  CHECK_FALSE(m.entries[2].fold.has_value());
  CHECK_FALSE(m.has_folds());
  CHECK(m.resolve(m.entries[1]) == std::filesystem::path("/data/a.wav"));
  const auto again = parse_manifest(manifest_csv(m));
  CHECK(manifest_csv(again) == manifest_csv(m));

  TempDir dir("manifest");
  save_manifest(m, dir.path() / "m.csv");
  const auto loaded = load_manifest(dir.path() / "m.csv");
  CHECK(loaded.base_dir == dir.path());
  CHECK(paths(loaded.entries) == paths(m.entries));
}

TEST_CASE("integer labels sort numerically") {
  const auto m = parse_manifest("path,label\na,10\nb,2\nc,1\n");
  CHECK(m.class_names == std::vector<std::string>{"1", "2", "10"});
  CHECK(m.entries[0].label == 2);
}

TEST_CASE("malformed manifests are rejected") {
  CHECK_THROWS_AS(parse_manifest("file,label\na,x\n"), ArgumentError);
  CHECK_THROWS_AS(parse_manifest("path,label\na,x\na,y\n"), ArgumentError);
  CHECK_THROWS_AS(parse_manifest("path,label\n,x\n"), ArgumentError);
  CHECK_THROWS_AS(parse_manifest("path,label,fold\na,x,-1\n"), ArgumentError);
  CHECK_THROWS_AS(load_manifest("/nonexistent/aer/manifest.csv"), IoError);
}

TEST_CASE("alternate split takes every other file per class") {
  const auto m = parse_manifest("path,label\nd,x\nb,x\na,x\nc,x\nsolo,y\n");
  const auto plan = alternate_split(m);
  CHECK(paths(plan.train) == std::vector<std::string>{"a", "c", "solo"});
  CHECK(paths(plan.test) == std::vector<std::string>{"b", "d"});
  CHECK(plan.warnings.empty());
}

TEST_CASE("alternate split warns about empty classes") {
  auto m = parse_manifest("path,label\na,x\nb,y\n");
  m.class_names.push_back("z");
  const auto plan = alternate_split(m);
  REQUIRE(plan.warnings.size() == 1);
  CHECK(plan.warnings[0].find("'z'") != std::string::npos);
}

TEST_CASE("alternate split partitions the manifest with balanced halves") {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    const std::size_t classes = 2 + gen() % 6;
    std::string text = "path,label\n";
    std::size_t odd = 0, total = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      const std::size_t n = 1 + gen() % 9;
      odd += n % 2;
      total += n;
      for (std::size_t i = 0; i < n; ++i)
        text += "f" + std::to_string(gen() % 1000000) + "_" + std::to_string(c) + "_" + std::to_string(i) + ",c" +
                std::to_string(c) + "\n";
    }
    const auto m = parse_manifest(text);
    const auto plan = alternate_split(m);
    CHECK(plan.train.size() + plan.test.size() == total);
    std::set<std::string> all;
    for (const auto& e : plan.train) all.insert(e.path);
    for (const auto& e : plan.test) CHECK(all.insert(e.path).second);
    CHECK(all.size() == total);
    CHECK(plan.train.size() - plan.test.size() == odd);
  }
}

TEST_CASE("k-fold split holds out one fold") {
  const auto m = manifest_with(4, 100, 5);
  CHECK(m.has_folds());
  std::set<std::string> seen;
  for (int f = 0; f < 5; ++f) {
    const auto plan = kfold_split(m, 5, f);
    CHECK(plan.train.size() == 320);
    CHECK(plan.test.size() == 80);
    for (const auto& e : plan.test) {
      CHECK(e.fold == f);
      CHECK(seen.insert(e.path).second);
    }
  }
  CHECK(seen.size() == 400);
  CHECK_THROWS_AS(kfold_split(m, 1, 0), ArgumentError);
  CHECK_THROWS_AS(kfold_split(m, 5, 5), ArgumentError);
  CHECK_THROWS_AS(kfold_split(m, 3, 0), ArgumentError);  // entries carry folds 3 and 4
  CHECK_THROWS_AS(kfold_split(parse_manifest("path,label\na,x\nb,y\n"), 2, 0), ArgumentError);
}

TEST_CASE("default recipes") {
  CHECK_THROWS_AS(default_recipes(1), ArgumentError);
  CHECK_THROWS_AS(default_recipes(16), ArgumentError);
  const auto r = default_recipes(15);
  std::set<std::string> names;
  for (const auto& x : r) names.insert(x.name);
  CHECK(names.size() == 15);
  // Name order matches recipe order, so manifest labels line up with recipe indices.
  CHECK(std::is_sorted(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      CHECK((r[i].band().second < r[j].band().first || r[j].band().second < r[i].band().first));
}

TEST_CASE("synthetic corpus layout and determinism") {
  SynthConfig cfg;
  cfg.recipes = default_recipes(2);
  cfg.clips_per_class = 10;
  cfg.clip_seconds = 1.0;
  cfg.seed = 42;
  TempDir a("synth-a"), b("synth-b");
  const auto ma = synth_corpus(cfg, a.path());
  synth_corpus(cfg, b.path());
  REQUIRE(ma.entries.size() == 20);
  CHECK(ma.num_classes() == 2);
  CHECK(ma.has_folds());
  for (const auto& e : ma.entries) {
    const auto clip = read_wav_file(ma.resolve(e));
    CHECK(clip.sample_rate == 16000.0);
    CHECK(clip.channels.size() == 1);
    CHECK(clip.frames() == 16000);
    CHECK(slurp(a.path() / e.path) == slurp(b.path() / e.path));
  }
  CHECK(slurp(a.path() / "manifest.csv") == slurp(b.path() / "manifest.csv"));

  cfg.seed = 43;
  TempDir c("synth-c");
  synth_corpus(cfg, c.path());
  CHECK(slurp(a.path() / ma.entries[0].path) != slurp(c.path() / ma.entries[0].path));
}

TEST_CASE("synthetic tone peaks at its frequency") {
  SynthConfig cfg;
  cfg.recipes = default_recipes(2);
  cfg.clips_per_class = 3;
  cfg.clip_seconds = 0.15;  // 2400 samples
  const auto clips = synth_clips(cfg);
  const std::size_t expected_bin = static_cast<std::size_t>(std::lround(440.0 * 2400 / 16000));
  for (const auto& c : clips) {
    if (c.label != 0) continue;
    REQUIRE(c.samples.size() == 2400);
    const auto spec = aer::testing::naive_dft(std::vector<double>(c.samples.begin(), c.samples.end()));
    std::size_t best = 1;
    for (std::size_t k = 1; k < 1200; ++k)
      if (std::abs(spec[k]) > std::abs(spec[best])) best = k;
    CHECK(best == expected_bin);
  }
}

TEST_CASE("synthetic classes are separable by band energy") {
  SynthConfig cfg;
  cfg.recipes = default_recipes(6);
  cfg.clips_per_class = 20;
  cfg.clip_seconds = 0.5;
  cfg.seed = 9;
  const auto clips = synth_clips(cfg);
  std::size_t correct = 0;
  std::map<int, std::size_t> per_class;
  for (const auto& c : clips) {
    CHECK(c.fold == static_cast<int>(per_class[c.label]++ % cfg.folds));
    float peak = 0.0f;
    for (float v : c.samples) peak = std::max(peak, std::abs(v));
    CHECK(peak <= 1.0f);
    correct += band_energy_classify(c.samples, cfg.sample_rate, cfg.recipes) == static_cast<std::size_t>(c.label);
  }
  CHECK(static_cast<double>(correct) >= 0.95 * static_cast<double>(clips.size()));
}

TEST_CASE("synth configuration is validated") {
  SynthConfig cfg;
  cfg.clips_per_class = 0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.clip_seconds = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
  cfg = {};
  cfg.recipes.resize(1);
  CHECK_THROWS_AS(cfg.validate(), ArgumentError);
}

TEST_CASE("manifest to frames") {
  SynthConfig cfg;
  cfg.recipes = default_recipes(2);
  cfg.clips_per_class = 2;
  cfg.clip_seconds = 1.0;
  TempDir dir("frames");
  const auto m = synth_corpus(cfg, dir.path());
  const auto fs = build_frames(m, m.entries, FeatureMode::FreqMag);
  CHECK(fs.dim == 1200);
  REQUIRE(fs.clips.size() == 4);
  const std::size_t per_clip = (16000 - 2400) / 80 + 1;
  CHECK(fs.size() == 4 * per_clip);
  for (const auto& c : fs.clips) {
    CHECK(c.count == per_clip);
    for (std::size_t f = 0; f < c.count; ++f) CHECK(fs.labels[c.first + f] == c.label);
  }
  auto missing = m;
  missing.entries[0].path = "nope.wav";
  CHECK_THROWS(build_frames(missing, missing.entries, FeatureMode::Time));
}

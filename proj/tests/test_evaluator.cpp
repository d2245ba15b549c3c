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

#include <vector>

#include "aer/errors.hpp"
#include "aer/evaluator.hpp"
#include "oracles.hpp"

using namespace aer;

namespace {

std::vector<FramePrediction> frames_of(const std::vector<std::vector<double>>& probs) {
  return testing::as_predictions(probs);
}

ConfusionMatrix matrix(std::size_t m, const std::vector<std::size_t>& counts) {
  ConfusionMatrix cm(m);
  for (std::size_t i = 0; i < counts.size(); ++i) cm.add(i / m, i % m, counts[i]);
  return cm;
}

// input 2 -> dense 2 (linear) -> softmax, with weights and biases set by hand.
Network<float> toy_network(std::vector<float> w, std::vector<float> b) {
  NetworkSpec spec{{LayerSpec::input(2), LayerSpec::dense(2, false), LayerSpec::softmax()}};
  Network<float> net(spec);
  auto p = net.params();
  for (std::size_t i = 0; i < 4; ++i) p[0]->value[i] = w[i];
  for (std::size_t i = 0; i < 2; ++i) p[1]->value[i] = b[i];
  return net;
}

// Balanced two-class set: class c clips have frames (1,0) for c = 0 and (0,1) for c = 1.
FrameSet toy_frames(std::size_t clips_per_class, std::size_t frames_per_clip) {
  FrameSet fs;
  fs.dim = 2;
  for (int c = 0; c < 2; ++c)
    for (std::size_t k = 0; k < clips_per_class; ++k) {
      FeatureMatrix fm{frames_per_clip, 2, {}};
      for (std::size_t f = 0; f < frames_per_clip; ++f) {
        fm.values.push_back(c == 0 ? 1.0f : 0.0f);
        fm.values.push_back(c == 0 ? 0.0f : 1.0f);
      }
      fs.append_clip("c" + std::to_string(c) + "_" + std::to_string(k), c, fm);
    }
  return fs;
}

}  // namespace

TEST_CASE("probability vote sums frame probabilities") {
  CHECK(probability_vote(frames_of({{0.6, 0.4}, {0.3, 0.7}})) == 1);
  CHECK(probability_vote(frames_of({{0.9, 0.1}, {0.4, 0.6}, {0.4, 0.6}})) == 0);
}

TEST_CASE("majority vote counts per-frame labels") {
  // Frame labels 0, 0, 1.
  CHECK(majority_vote(frames_of({{0.6, 0.4}, {0.55, 0.45}, {0.0, 1.0}})) == 0);
  // Per-frame majority and summed probability can disagree.
  const auto split = frames_of({{0.51, 0.49}, {0.51, 0.49}, {0.0, 1.0}});
  CHECK(majority_vote(split) == 0);
  CHECK(probability_vote(split) == 1);
}

TEST_CASE("ties go to the lowest class index") {
  CHECK(majority_vote(frames_of({{1.0, 0.0}, {0.0, 1.0}})) == 0);
  CHECK(probability_vote(frames_of({{0.5, 0.5}})) == 0);
  CHECK(probability_vote(frames_of({{0.2, 0.4, 0.4}})) == 1);
  CHECK(majority_vote(frames_of({{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}})) == 1);
  CHECK(argmax(std::vector<double>{3.0, 3.0, 1.0}) == 0);
}

TEST_CASE("voting on an empty clip is rejected") {
  std::vector<FramePrediction> none;
  CHECK_THROWS_AS(probability_vote(none), ArgumentError);
  CHECK_THROWS_AS(majority_vote(none), ArgumentError);
}

TEST_CASE("voting agrees with the independent oracle on random clips") {
  const auto r = testing::check_voting(2000, 7);
  CHECK(r.cases == 2000);
  CHECK(r.probability_mismatches == 0);
  CHECK(r.majority_mismatches == 0);
}

TEST_CASE("both votes agree when every frame has the same argmax") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 200; ++t) {
    auto probs = testing::random_frame_set(gen, false);
    const std::size_t m = probs[0].size(), winner = gen() % m;
    for (auto& row : probs) {
      row[winner] += 2.0;
      for (auto& v : row) v /= 3.0;
    }
    const auto f = frames_of(probs);
    CHECK(probability_vote(f) == winner);
    CHECK(majority_vote(f) == winner);
  }
}

TEST_CASE("probability vote is invariant to a positive common scale") {
  std::mt19937_64 gen(11);
  for (int t = 0; t < 200; ++t) {
    const auto probs = testing::random_frame_set(gen, true);
    auto scaled = probs;
    for (auto& row : scaled)
      for (auto& v : row) v *= 4.0;  // power of two keeps ties exact
    CHECK(probability_vote(frames_of(probs)) == probability_vote(frames_of(scaled)));
    CHECK(majority_vote(frames_of(probs)) == majority_vote(frames_of(scaled)));
  }
}

TEST_CASE("precision, recall and f-score of a worked matrix") {
  // truth rows, predicted columns
  const auto cm = matrix(2, {2, 1, 0, 3});
  const auto pr0 = precision_recall(cm, 0);
  CHECK(pr0.precision == 1.0);
  CHECK(pr0.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const auto pr1 = precision_recall(cm, 1);
  CHECK(pr1.precision == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(pr1.recall == 1.0);
  CHECK(f_score(0.5, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(f_score(0.0, 0.0) == 0.0);
  CHECK(cm.support(0) == 3);
  CHECK(cm.predicted(1) == 4);
  CHECK(cm.total() == 6);
}

TEST_CASE("an empty class row and column scores zero") {
  const auto cm = matrix(3, {2, 0, 0, 0, 2, 0, 0, 0, 0});
  const auto pr = precision_recall(cm, 2);
  CHECK(pr.precision == 0.0);
  CHECK(pr.recall == 0.0);
  CHECK(macro_fscore(cm) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("f-scores match the hand oracle on every small matrix") {
  const auto r = testing::check_fscore_enumeration();
  CHECK(r.matrices == 625 + 19683);
  CHECK(r.mismatches == 0);
}

TEST_CASE("confusion matrix rejects out-of-range classes") {
  ConfusionMatrix cm(2);
  CHECK_THROWS_AS(cm.add(2, 0), ArgumentError);
  CHECK_THROWS_AS(cm.add(0, 2), ArgumentError);
}

TEST_CASE("report round-trips through CSV") {
  const auto cm = matrix(3, {5, 1, 0, 2, 3, 1, 0, 0, 4});
  const auto r = make_report(cm, Voting::Majority, {"dog", "rain, heavy", "siren"});
  const auto back = EvaluationReport::from_csv(r.to_csv());
  CHECK(back.voting == Voting::Majority);
  CHECK(back.num_files == 16);
  CHECK(back.macro_fscore == r.macro_fscore);
  REQUIRE(back.classes.size() == 3);
  for (std::size_t c = 0; c < 3; ++c) {
    CHECK(back.classes[c].name == r.classes[c].name);
    CHECK(back.classes[c].precision == r.classes[c].precision);
    CHECK(back.classes[c].recall == r.classes[c].recall);
    CHECK(back.classes[c].fscore == r.classes[c].fscore);
    CHECK(back.classes[c].support == r.classes[c].support);
  }
  double mean = 0.0;
  for (const auto& c : back.classes) mean += c.fscore;
  CHECK(back.macro_fscore == doctest::Approx(mean / 3.0).epsilon(1e-15));
  CHECK(r.to_text().find("Average") != std::string::npos);
  CHECK(r.confusion_csv().find("siren,0,0,4") != std::string::npos);
  CHECK_THROWS_AS(EvaluationReport::from_csv("nope\n"), ArgumentError);
}

TEST_CASE("voting names parse") {
  CHECK(parse_voting("majority") == Voting::Majority);
  CHECK(parse_voting(to_string(Voting::Probability)) == Voting::Probability);
  CHECK_THROWS_AS(parse_voting("median"), ArgumentError);
}

TEST_CASE("a perfect model scores one") {
  auto net = toy_network({10, -10, -10, 10}, {0, 0});
  const auto fs = toy_frames(3, 4);
  for (auto v : {Voting::Probability, Voting::Majority}) {
    const auto r = evaluate(net, fs, v, {"a", "b"});
    CHECK(r.macro_fscore == 1.0);
    CHECK(r.num_files == 6);
  }
  CHECK(frame_fscore(net, fs) == 1.0);
}

TEST_CASE("an always-class-0 model on a balanced set") {
  auto net = toy_network({0, 0, 0, 0}, {1, 0});
  const auto fs = toy_frames(5, 3);
  const auto r = evaluate(net, fs, Voting::Probability, {"a", "b"});
  CHECK(r.classes[0].fscore == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(r.classes[1].fscore == 0.0);
  CHECK(r.macro_fscore == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.confusion.at(1, 0) == 5);
  const auto again = evaluate(net, fs, Voting::Probability, {"a", "b"});
  CHECK(again.to_csv() == r.to_csv());
}

TEST_CASE("evaluate validates its inputs") {
  auto net = toy_network({1, 0, 0, 1}, {0, 0});
  CHECK_THROWS_AS(evaluate(net, FrameSet{}, Voting::Probability, {}), ArgumentError);
  FrameSet wrong;
  wrong.dim = 3;
  wrong.append_clip("x", 0, FeatureMatrix{1, 3, {1, 2, 3}});
  CHECK_THROWS_AS(evaluate(net, wrong, Voting::Probability, {}), ShapeError);
  auto bad_label = toy_frames(1, 1);
  bad_label.clips[0].label = 5;
  CHECK_THROWS_AS(evaluate(net, bad_label, Voting::Probability, {}), ArgumentError);
}

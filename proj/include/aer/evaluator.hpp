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

#include "aer/frame_set.hpp"
#include "aer/network.hpp"

namespace aer {

enum class Voting { Probability, Majority };

std::string_view to_string(Voting v);
Voting parse_voting(std::string_view name);

/// Class distribution predicted for one frame of a clip.
struct FramePrediction {
  std::string clip_id;
  std::size_t frame_index = 0;
  std::vector<double> probs;
};

/// Index of the largest value; the lowest index wins ties.
std::size_t argmax(std::span<const double> values);

/// argmax_j sum_i probs[i][j].
std::size_t probability_vote(std::span<const FramePrediction> frames);

/// Most frequent per-frame argmax.
std::size_t majority_vote(std::span<const FramePrediction> frames);

std::size_t vote(std::span<const FramePrediction> frames, Voting method);

/// counts[i][j] = items of true class i predicted as j.
class ConfusionMatrix {
 public:
  ConfusionMatrix() = default;
  explicit ConfusionMatrix(std::size_t classes) : m_(classes), counts_(classes * classes, 0) {}

  std::size_t classes() const { return m_; }
  void add(std::size_t truth, std::size_t predicted, std::size_t count = 1);
  std::size_t at(std::size_t truth, std::size_t predicted) const { return counts_[truth * m_ + predicted]; }
  std::size_t support(std::size_t truth) const;
  std::size_t predicted(std::size_t cls) const;
  std::size_t total() const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t m_ = 0;
  std::vector<std::size_t> counts_;
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

/// One-vs-rest precision and recall of class c; 0/0 counts as 0.
PrecisionRecall precision_recall(const ConfusionMatrix& confusion, std::size_t c);

/// Harmonic mean 2pr/(p+r), 0 when p + r = 0.
double f_score(double precision, double recall);

/// Unweighted mean of per-class f-scores over every class of the matrix.
double macro_fscore(const ConfusionMatrix& confusion);

struct ClassScore {
  std::string name;
  double precision = 0.0;
  double recall = 0.0;
  double fscore = 0.0;
  std::size_t support = 0;
};

struct EvaluationReport {
  Voting voting = Voting::Probability;
  std::vector<ClassScore> classes;
  double macro_fscore = 0.0;
  ConfusionMatrix confusion;
  std::size_t num_files = 0;

  /// Per-class precision/recall/f-score table in percent with a trailing average row.
  std::string to_text() const;
  /// voting,class,name,precision,recall,fscore,support rows plus a final "macro" row.
  std::string to_csv() const;
  std::string confusion_csv() const;
  /// Inverse of to_csv(); the confusion matrix is not part of that file and stays empty.
  static EvaluationReport from_csv(std::string_view text);
};

EvaluationReport make_report(const ConfusionMatrix& confusion, Voting voting, const std::vector<std::string>& class_names);

/// Inference-mode class probabilities for every frame, row-major [frames x classes].
std::vector<double> predict_frames(Network<float>& net, const FrameSet& frames, std::size_t batch_size = 256);

/// Frames of each clip are voted into one label; the report covers every clip of `test`.
EvaluationReport evaluate(Network<float>& net, const FrameSet& test, Voting voting,
                          const std::vector<std::string>& class_names);

/// Macro f-score over individual frames, without voting.
double frame_fscore(Network<float>& net, const FrameSet& frames);

}  // namespace aer

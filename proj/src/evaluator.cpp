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

#include "aer/evaluator.hpp"

#include <cstdio>
#include <sstream>

#include "aer/csv.hpp"
#include "aer/errors.hpp"

namespace aer {

std::string_view to_string(Voting v) { return v == Voting::Probability ? "probability" : "majority"; }

Voting parse_voting(std::string_view name) {
  if (name == "probability") return Voting::Probability;
  if (name == "majority") return Voting::Majority;
  throw ArgumentError("unknown voting method '" + std::string(name) + "'");
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("argmax of an empty vector");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

namespace {

std::size_t class_count(std::span<const FramePrediction> frames, const char* who) {
  if (frames.empty()) throw ArgumentError(std::string(who) + ": no frames to vote on");
  const std::size_t m = frames.front().probs.size();
  if (m == 0) throw ArgumentError(std::string(who) + ": empty probability vector");
  for (const auto& f : frames)
    if (f.probs.size() != m) throw ArgumentError(std::string(who) + ": frames disagree on the class count");
  return m;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", 100.0 * v);
  return buf;
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::size_t probability_vote(std::span<const FramePrediction> frames) {
  const std::size_t m = class_count(frames, "probability_vote");
  std::vector<double> sums(m, 0.0);
  for (const auto& f : frames)
    for (std::size_t j = 0; j < m; ++j) sums[j] += f.probs[j];
  return argmax(sums);
}

std::size_t majority_vote(std::span<const FramePrediction> frames) {
  const std::size_t m = class_count(frames, "majority_vote");
  std::vector<std::size_t> tally(m, 0);
  for (const auto& f : frames) ++tally[argmax(f.probs)];
  std::size_t best = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (tally[j] > tally[best]) best = j;
  return best;
}

std::size_t vote(std::span<const FramePrediction> frames, Voting method) {
  return method == Voting::Probability ? probability_vote(frames) : majority_vote(frames);
}

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted, std::size_t count) {
  if (truth >= m_ || predicted >= m_) throw ArgumentError("confusion matrix: class index out of range");
  counts_[truth * m_ + predicted] += count;
}

std::size_t ConfusionMatrix::support(std::size_t truth) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < m_; ++j) s += at(truth, j);
  return s;
}

std::size_t ConfusionMatrix::predicted(std::size_t cls) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i < m_; ++i) s += at(i, cls);
  return s;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t s = 0;
  for (auto c : counts_) s += c;
  return s;
}

PrecisionRecall precision_recall(const ConfusionMatrix& confusion, std::size_t c) {
  const double tp = static_cast<double>(confusion.at(c, c));
  const auto pred = confusion.predicted(c);
  const auto sup = confusion.support(c);
  PrecisionRecall pr;
  pr.precision = pred ? tp / static_cast<double>(pred) : 0.0;
  pr.recall = sup ? tp / static_cast<double>(sup) : 0.0;
  return pr;
}

double f_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

double macro_fscore(const ConfusionMatrix& confusion) {
  if (confusion.classes() == 0) return 0.0;
  double sum = 0.0;
  for (std::size_t c = 0; c < confusion.classes(); ++c) {
    const auto pr = precision_recall(confusion, c);
    sum += f_score(pr.precision, pr.recall);
  }
  return sum / static_cast<double>(confusion.classes());
}

EvaluationReport make_report(const ConfusionMatrix& confusion, Voting voting, const std::vector<std::string>& class_names) {
  EvaluationReport r;
  r.voting = voting;
  r.confusion = confusion;
  r.num_files = confusion.total();
  for (std::size_t c = 0; c < confusion.classes(); ++c) {
    const auto pr = precision_recall(confusion, c);
    ClassScore s;
    s.name = c < class_names.size() ? class_names[c] : std::to_string(c);
    s.precision = pr.precision;
    s.recall = pr.recall;
    s.fscore = f_score(pr.precision, pr.recall);
    s.support = confusion.support(c);
    r.classes.push_back(std::move(s));
  }
  r.macro_fscore = macro_fscore(confusion);
  return r;
}

std::string EvaluationReport::to_text() const {
  std::ostringstream os;
  std::size_t width = 7;
  for (const auto& c : classes) width = std::max(width, c.name.size());
  char line[256];
  os << "Voting: " << to_string(voting) << "   Files: " << num_files << "\n";
  std::snprintf(line, sizeof line, "%4s  %-*s  %9s  %9s  %9s\n", "No.", static_cast<int>(width), "Class", "Precision",
                "Recall", "F-Score");
  os << line;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    std::snprintf(line, sizeof line, "%4zu  %-*s  %9s  %9s  %9s\n", i, static_cast<int>(width), c.name.c_str(),
                  pct(c.precision).c_str(), pct(c.recall).c_str(), pct(c.fscore).c_str());
    os << line;
  }
  std::snprintf(line, sizeof line, "%4s  %-*s  %9s  %9s  %9s\n", "", static_cast<int>(width), "Average", "", "",
                pct(macro_fscore).c_str());
  os << line;
  return os.str();
}

std::string EvaluationReport::to_csv() const {
  std::ostringstream os;
  os << "voting,class,name,precision,recall,fscore,support\n";
  const std::string v(to_string(voting));
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    os << v << ',' << i << ',' << csv::escape(c.name) << ',' << exact(c.precision) << ',' << exact(c.recall) << ','
       << exact(c.fscore) << ',' << c.support << '\n';
  }
  os << v << ",macro,,,," << exact(macro_fscore) << ',' << num_files << '\n';
  return os.str();
}

std::string EvaluationReport::confusion_csv() const {
  std::ostringstream os;
  os << "true\\predicted";
  for (const auto& c : classes) os << ',' << csv::escape(c.name);
  os << '\n';
  for (std::size_t i = 0; i < confusion.classes(); ++i) {
    os << csv::escape(i < classes.size() ? classes[i].name : std::to_string(i));
    for (std::size_t j = 0; j < confusion.classes(); ++j) os << ',' << confusion.at(i, j);
    os << '\n';
  }
  return os.str();
}

EvaluationReport EvaluationReport::from_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows.front().size() != 7 || rows.front()[0] != "voting")
    throw ArgumentError("report CSV: missing header");
  EvaluationReport r;
  bool have_macro = false;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i];
    if (f.size() != 7) throw ArgumentError("report CSV: row " + std::to_string(i) + " has " + std::to_string(f.size()) + " fields");
    r.voting = parse_voting(f[0]);
    if (f[1] == "macro") {
      r.macro_fscore = std::stod(f[5]);
      r.num_files = std::stoull(f[6]);
      have_macro = true;
      continue;
    }
    if (std::stoull(f[1]) != r.classes.size()) throw ArgumentError("report CSV: class rows out of order");
    r.classes.push_back({f[2], std::stod(f[3]), std::stod(f[4]), std::stod(f[5]), std::stoull(f[6])});
  }
  if (!have_macro) throw ArgumentError("report CSV: missing macro row");
  return r;
}

std::vector<double> predict_frames(Network<float>& net, const FrameSet& frames, std::size_t batch_size) {
  if (frames.dim != net.input_length())
    throw ShapeError("predict_frames: frames have " + std::to_string(frames.dim) + " values, network expects " +
                     std::to_string(net.input_length()));
  const std::size_t m = net.num_classes();
  std::vector<double> out(frames.size() * m);
  Tensor<float> batch;
  for (std::size_t start = 0; start < frames.size(); start += batch_size) {
    const std::size_t n = std::min(batch_size, frames.size() - start);
    batch.resize({n, frames.dim});
    std::copy_n(frames.values.begin() + static_cast<std::ptrdiff_t>(start * frames.dim), n * frames.dim, batch.data());
    const auto& probs = net.forward(batch, Pass::Infer);
    for (std::size_t i = 0; i < n * m; ++i) out[start * m + i] = probs[i];
  }
  return out;
}

EvaluationReport evaluate(Network<float>& net, const FrameSet& test, Voting voting,
                          const std::vector<std::string>& class_names) {
  if (test.clips.empty()) throw ArgumentError("evaluate: empty test set");
  const std::size_t m = net.num_classes();
  const auto probs = predict_frames(net, test);
  ConfusionMatrix confusion(m);
  std::vector<FramePrediction> clip_frames;
  for (const auto& clip : test.clips) {
    if (clip.count == 0) throw ArgumentError("evaluate: clip '" + clip.clip_id + "' has no frames");
    if (clip.label < 0 || static_cast<std::size_t>(clip.label) >= m)
      throw ArgumentError("evaluate: clip '" + clip.clip_id + "' has a label outside the network's classes");
    clip_frames.clear();
    for (std::size_t f = 0; f < clip.count; ++f) {
      const double* p = probs.data() + (clip.first + f) * m;
      clip_frames.push_back({clip.clip_id, f, std::vector<double>(p, p + m)});
    }
    confusion.add(static_cast<std::size_t>(clip.label), vote(clip_frames, voting));
  }
  return make_report(confusion, voting, class_names);
}

double frame_fscore(Network<float>& net, const FrameSet& frames) {
  const std::size_t m = net.num_classes();
  const auto probs = predict_frames(net, frames);
  ConfusionMatrix confusion(m);
  for (std::size_t i = 0; i < frames.size(); ++i)
    confusion.add(static_cast<std::size_t>(frames.labels[i]), argmax(std::span<const double>(probs.data() + i * m, m)));
  return macro_fscore(confusion);
}

}  // namespace aer

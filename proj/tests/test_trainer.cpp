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
#include <numeric>
#include <random>

#include "aer/errors.hpp"
#include "aer/trainer.hpp"
#include "sanity.hpp"

using namespace aer;

namespace {

FrameSet toy_frames(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<float> u(-1.0f, 1.0f);
  FrameSet set;
  set.mode = FeatureMode::Time;
  set.dim = dim;
  for (std::size_t i = 0; i < n; ++i) {
    FeatureMatrix m{1, dim, std::vector<float>(dim)};
    for (auto& v : m.values) v = u(gen);
    const int label = m.values[0] + m.values[1] > 0 ? 1 : 0;
    set.append_clip("c" + std::to_string(i), label, m);
  }
  return set;
}

NetworkSpec toy_spec(std::size_t dim, std::size_t hidden, std::size_t classes) {
  return NetworkSpec{{LayerSpec::input(dim), LayerSpec::dense(hidden), LayerSpec::dense(classes, false), LayerSpec::softmax()}};
}

}  // namespace

TEST_CASE("cross entropy values") {
  CHECK(cross_entropy(std::vector<double>{1.0, 0.0}, 0) == 0.0);
  CHECK(cross_entropy(std::vector<double>{0.5, 0.5}, 1) == doctest::Approx(std::log(2.0)));
  CHECK(cross_entropy(std::vector<double>{1.0, 0.0}, 1) == doctest::Approx(-std::log(1e-12)));
  CHECK_THROWS_AS(cross_entropy(std::vector<double>{0.5, 0.5}, 2), ArgumentError);
  Tensor<double> p({1, 2}, 0.5);
  CHECK_THROWS_AS(cross_entropy_batch<double>(p, std::vector<int>{-1}, nullptr), ArgumentError);
}

TEST_CASE("learning-rate schedule") {
  const auto dnn = TrainConfig::dnn_preset();
  const auto cnn = TrainConfig::cnn_preset();
  CHECK(dnn.epochs == 100);
  CHECK(cnn.epochs == 20);
  CHECK(dnn.batch_size == 256);
  CHECK(dnn.momentum == 0.9);
  CHECK(lr_at(0, dnn) == 0.05);
  CHECK(lr_at(19, dnn) == 0.05);
  CHECK(lr_at(20, dnn) == 0.025);
  CHECK(lr_at(5, cnn) == 0.025);
  CHECK(lr_at(40, dnn) == 0.0125);
  for (std::size_t e = 1; e < 200; ++e) {
    CHECK(lr_at(e, dnn) <= lr_at(e - 1, dnn));
    if (e % dnn.lr_halving_period == 0) CHECK(lr_at(e, dnn) == lr_at(e - 1, dnn) / 2);
  }
  auto single = dnn;
  single.schedule = LrSchedule::Single;
  CHECK(lr_at(20, single) == 0.025);
  CHECK(lr_at(95, single) == 0.025);
}

TEST_CASE("config validation") {
  TrainConfig c;
  c.base_lr = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = {};
  c.momentum = 1.0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = {};
  c.batch_size = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  c = {};
  c.max_norm_limit = 0;
  CHECK_THROWS_AS(c.validate(), ArgumentError);
  CHECK_THROWS_AS(parse_lr_schedule("cosine"), ArgumentError);
}

TEST_CASE("momentum step formulas") {
  Param<double> p{"w", Tensor<double>({1}, 1.0), Tensor<double>({1}, 1.0), true};
  std::vector<Param<double>*> params{&p};
  OptimizerState<double> state(params);
  CHECK(state.velocity[0][0] == 0.0);
  sgd_momentum_step(params, state, 0.1, 0.9);
  CHECK(state.velocity[0][0] == doctest::Approx(-0.1));
  CHECK(p.value[0] == doctest::Approx(0.9));
  p.grad[0] = 0.0;
  sgd_momentum_step(params, state, 0.1, 0.9);
  CHECK(p.value[0] == doctest::Approx(0.9 - 0.09));
  CHECK(state.step == 2);

  Param<double> q{"w", Tensor<double>({2}, 1.0), Tensor<double>({2}, 0.5), true};
  std::vector<Param<double>*> qs{&q};
  OptimizerState<double> plain(qs);
  for (int i = 0; i < 3; ++i) sgd_momentum_step(qs, plain, 0.2, 0.0);
  CHECK(q.value[0] == doctest::Approx(1.0 - 3 * 0.2 * 0.5));
}

TEST_CASE("max-norm projection") {
  Param<double> w{"w", Tensor<double>({2, 2}), Tensor<double>({2, 2}), true};
  w.value[0] = 3;
  w.value[1] = 4;
  w.value[2] = 0.3;
  w.value[3] = 0.4;
  Param<double> b{"b", Tensor<double>({2}, 5.0), Tensor<double>({2}), false};
  std::vector<Param<double>*> params{&w, &b};
  max_norm_project(params, 1.0);
  CHECK(w.value[0] == doctest::Approx(0.6));
  CHECK(w.value[1] == doctest::Approx(0.8));
  CHECK(w.value[2] == 0.3);
  CHECK(w.value[3] == 0.4);
  CHECK(b.value[0] == 5.0);

  // Convolution kernels are constrained per output channel over (in_channels x width).
  Param<double> k{"k", Tensor<double>({2, 2, 2}, 1.0), Tensor<double>({2, 2, 2}), true};
  k.value[4] = k.value[5] = k.value[6] = k.value[7] = 0.1;
  std::vector<Param<double>*> ks{&k};
  max_norm_project(ks, 1.0);
  for (int i = 0; i < 4; ++i) CHECK(k.value[i] == doctest::Approx(0.5));
  for (int i = 4; i < 8; ++i) CHECK(k.value[i] == doctest::Approx(0.1));
  std::vector<const Param<double>*> cks{&k};
  CHECK(max_constrained_norm(cks) == doctest::Approx(1.0));
}

TEST_CASE("one training step matches a hand-coded oracle") {
  // input 5 -> dense 4 + relu -> dense 3 -> softmax, one full batch, no dropout.
  const std::size_t dim = 5, hidden = 4, classes = 3, n = 7;
  FrameSet frames = toy_frames(n, dim, 31);
  for (std::size_t i = 0; i < n; ++i) frames.labels[i] = static_cast<int>(i % classes);
  Network<float> net(toy_spec(dim, hidden, classes));
  Rng rng(77);
  net.init_glorot(rng);
  // Make some rows exceed the norm limit so the projection participates.
  auto params = net.params();
  for (std::size_t j = 0; j < dim; ++j) params[0]->value[j] *= 8.0f;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<float> ub(-0.2f, 0.2f);
  for (auto& v : params[1]->value.values()) v = ub(gen);
  for (auto& v : params[3]->value.values()) v = ub(gen);

  // Oracle state in double, copied from the float network before the step.
  auto copy = [](const Param<float>* p) { return std::vector<double>(p->value.values().begin(), p->value.values().end()); };
  std::vector<double> w1 = copy(params[0]), b1 = copy(params[1]), w2 = copy(params[2]), b2 = copy(params[3]);
  std::vector<double> gw1(w1.size()), gb1(b1.size()), gw2(w2.size()), gb2(b2.size());
  for (std::size_t s = 0; s < n; ++s) {
    const auto x = frames.frame(s);
    std::vector<double> z1(hidden), h(hidden), z2(classes), p(classes);
    for (std::size_t j = 0; j < hidden; ++j) {
      z1[j] = b1[j];
      for (std::size_t i = 0; i < dim; ++i) z1[j] += w1[j * dim + i] * x[i];
      h[j] = std::max(0.0, z1[j]);
    }
    double mx = -1e300;
    for (std::size_t c = 0; c < classes; ++c) {
      z2[c] = b2[c];
      for (std::size_t j = 0; j < hidden; ++j) z2[c] += w2[c * hidden + j] * h[j];
      mx = std::max(mx, z2[c]);
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < classes; ++c) sum += p[c] = std::exp(z2[c] - mx);
    std::vector<double> dz2(classes), dh(hidden, 0.0);
    for (std::size_t c = 0; c < classes; ++c) {
      dz2[c] = (p[c] / sum - (static_cast<int>(c) == frames.labels[s] ? 1.0 : 0.0)) / static_cast<double>(n);
      gb2[c] += dz2[c];
      for (std::size_t j = 0; j < hidden; ++j) {
        gw2[c * hidden + j] += dz2[c] * h[j];
        dh[j] += dz2[c] * w2[c * hidden + j];
      }
    }
    for (std::size_t j = 0; j < hidden; ++j) {
      const double dz1 = z1[j] > 0 ? dh[j] : 0.0;
      gb1[j] += dz1;
      for (std::size_t i = 0; i < dim; ++i) gw1[j * dim + i] += dz1 * x[i];
    }
  }
  const double lr = 0.3;
  auto update = [&](std::vector<double>& w, const std::vector<double>& g, std::size_t row, bool constrained) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += -lr * g[i];  // first step: v = -lr g
    if (!constrained) return;
    for (std::size_t r = 0; r < w.size() / row; ++r) {
      double sq = 0.0;
      for (std::size_t i = 0; i < row; ++i) sq += w[r * row + i] * w[r * row + i];
      if (std::sqrt(sq) > 1.0)
        for (std::size_t i = 0; i < row; ++i) w[r * row + i] /= std::sqrt(sq);
    }
  };
  update(w1, gw1, dim, true);
  update(b1, gb1, 1, false);
  update(w2, gw2, hidden, true);
  update(b2, gb2, 1, false);

  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.batch_size = n;
  cfg.base_lr = lr;
  fit(net, frames, cfg);
  const std::vector<std::vector<double>*> expect{&w1, &b1, &w2, &b2};
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < expect[k]->size(); ++i) CHECK(std::abs(params[k]->value[i] - (*expect[k])[i]) < 1e-6);
}

TEST_CASE("zero epochs leaves the network untouched") {
  const auto frames = toy_frames(20, 6, 1);
  Network<float> net(toy_spec(6, 5, 2));
  Rng rng(3);
  net.init_glorot(rng);
  Network<float> before(toy_spec(6, 5, 2));
  before.copy_params_from(net);
  TrainConfig cfg;
  cfg.epochs = 0;
  const auto r = fit(net, frames, cfg);
  CHECK(r.epochs.empty());
  CHECK(r.steps == 0);
  const auto a = net.params(), b = before.params();
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(std::equal(a[i]->value.values().begin(), a[i]->value.values().end(), b[i]->value.values().begin()));
}

TEST_CASE("every frame is visited once per epoch, including the partial batch") {
  const auto frames = toy_frames(10, 4, 2);
  Network<float> net(toy_spec(4, 3, 2));
  Rng rng(1);
  net.init_glorot(rng);
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.batch_size = 4;
  std::vector<std::vector<std::size_t>> seen(3);
  std::vector<std::size_t> sizes;
  FitHooks hooks;
  hooks.on_step = [&](const Network<float>&, const StepInfo& s) {
    seen[s.epoch].insert(seen[s.epoch].end(), s.frames.begin(), s.frames.end());
    sizes.push_back(s.frames.size());
  };
  const auto r = fit(net, frames, cfg, nullptr, hooks);
  CHECK(r.steps == 9);
  CHECK(sizes == std::vector<std::size_t>{4, 4, 2, 4, 4, 2, 4, 4, 2});
  for (auto& e : seen) {
    std::sort(e.begin(), e.end());
    std::vector<std::size_t> all(10);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CHECK(e == all);
  }
}

TEST_CASE("identical seeds give identical metrics") {
  const auto frames = toy_frames(300, 8, 3);
  const auto val = toy_frames(50, 8, 4);
  auto run = [&] {
    Network<float> net(NetworkSpec{{LayerSpec::input(8), LayerSpec::drop(0.2), LayerSpec::dense(16), LayerSpec::drop(0.5),
                                    LayerSpec::dense(2, false), LayerSpec::softmax()}});
    Rng rng = init_rng(9);
    net.init_glorot(rng);
    TrainConfig cfg;
    cfg.epochs = 4;
    cfg.batch_size = 64;
    cfg.seed = 9;
    return metrics_csv(fit(net, frames, cfg, &val).epochs);
  };
  const auto a = run();
  CHECK(a == run());
  CHECK(a.rfind("epoch,lr,train_loss,train_frame_fscore,val_frame_fscore\n", 0) == 0);
}

TEST_CASE("metrics csv leaves validation blank without a validation set") {
  EpochMetrics e;
  e.epoch = 2;
  e.lr = 0.05;
  e.train_loss = 0.5;
  e.train_frame_fscore = 0.75;
  CHECK(metrics_csv({e}) == "epoch,lr,train_loss,train_frame_fscore,val_frame_fscore\n2,0.05,0.5,0.75,\n");
}

TEST_CASE("loss on a fixed batch descends over the first steps") {
  const FrameSet frames = aer::testing::two_class_frames(3, FeatureMode::Time);
  Network<float> net(aer::testing::tiny_dnn_spec(frames.dim));
  Rng rng = init_rng(3);
  net.init_glorot(rng);
  const std::size_t b = 256;
  Tensor<float> x({b, frames.dim});
  std::vector<int> labels(b);
  for (std::size_t i = 0; i < b; ++i) {
    const std::size_t src = i * frames.size() / b;
    const auto f = frames.frame(src);
    std::copy(f.begin(), f.end(), x.data() + i * frames.dim);
    labels[i] = frames.labels[src];
  }
  auto params = net.params();
  OptimizerState<float> state(params);
  Tensor<float> g;
  double previous = 1e300;
  for (int step = 0; step < 5; ++step) {
    const double loss = cross_entropy_batch(net.forward(x, Pass::Train, &rng), labels, &g);
    CHECK(loss < previous);
    previous = loss;
    net.backward_logits(g);
    sgd_momentum_step(params, state, 1e-3, 0.9);
    max_norm_project(params, 1.0);
  }
}

TEST_CASE("non-finite loss raises a divergence error") {
  auto frames = toy_frames(10, 4, 5);
  frames.values[5] = std::numeric_limits<float>::quiet_NaN();
  Network<float> net(toy_spec(4, 3, 2));
  Rng rng(1);
  net.init_glorot(rng);
  TrainConfig cfg;
  cfg.epochs = 1;
  try {
    fit(net, frames, cfg);
    FAIL("expected DivergenceError");
  } catch (const DivergenceError& e) {
    CHECK(e.epoch() == 0);
    CHECK(e.step() == 0);
  }
}

TEST_CASE("fit rejects incompatible data") {
  const auto frames = toy_frames(10, 4, 6);
  Network<float> wrong_dim(toy_spec(5, 3, 2));
  CHECK_THROWS_AS(fit(wrong_dim, frames, TrainConfig{}), ShapeError);
  Network<float> one_class(toy_spec(4, 3, 1));
  CHECK_THROWS_AS(fit(one_class, frames, TrainConfig{}), ArgumentError);
  CHECK_THROWS_AS(fit(wrong_dim, FrameSet{}, TrainConfig{}), ArgumentError);
}

TEST_CASE("glorot draws are centred") {
  Rng rng(11);
  const auto t = glorot_uniform<double>({100000}, 2400, 384, rng);
  const double a = std::sqrt(6.0 / 2784.0);
  CHECK(glorot_limit(2400, 384) == doctest::Approx(0.0464).epsilon(1e-3));
  double mean = 0.0;
  for (double v : t.values()) {
    CHECK(std::abs(v) <= a);
    mean += v;
  }
  mean /= 100000.0;
  CHECK(std::abs(mean) <= 3.0 * a / std::sqrt(3.0) / std::sqrt(100000.0));
}

TEST_CASE("tiny network separates the two-class corpus") {
  const auto r = aer::testing::run_sanity(0);
  CHECK(r.final_accuracy >= 0.99);
  CHECK(r.max_norm_seen <= 1.0 + 1e-6);
}

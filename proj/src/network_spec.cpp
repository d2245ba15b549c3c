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

#include "aer/network_spec.hpp"

#include "aer/errors.hpp"

namespace aer {

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Input: return "input";
    case LayerKind::Dropout: return "dropout";
    case LayerKind::FullyConnected: return "fully_connected";
    case LayerKind::Convolution: return "convolution";
    case LayerKind::Pooling: return "pooling";
    case LayerKind::Softmax: return "softmax";
  }
  return "?";
}

LayerKind parse_layer_kind(std::string_view name) {
  for (auto k : {LayerKind::Input, LayerKind::Dropout, LayerKind::FullyConnected, LayerKind::Convolution,
                 LayerKind::Pooling, LayerKind::Softmax})
    if (to_string(k) == name) return k;
  throw ArgumentError("unknown layer kind '" + std::string(name) + "'");
}

LayerSpec LayerSpec::input(std::size_t length) { return {LayerKind::Input, length, 0, 0, 0.0, false}; }
LayerSpec LayerSpec::drop(double probability) { return {LayerKind::Dropout, 0, 0, 0, probability, false}; }
LayerSpec LayerSpec::dense(std::size_t units, bool relu) { return {LayerKind::FullyConnected, units, 0, 0, 0.0, relu}; }
LayerSpec LayerSpec::conv(std::size_t channels, std::size_t kernel) {
  return {LayerKind::Convolution, channels, kernel, 1, 0.0, true};
}
LayerSpec LayerSpec::pool(std::size_t size, std::size_t stride) { return {LayerKind::Pooling, 0, size, stride, 0.0, false}; }
LayerSpec LayerSpec::softmax() { return {LayerKind::Softmax, 0, 0, 0, 0.0, false}; }

namespace {

std::string where(std::size_t i, const LayerSpec& l) {
  return "layer " + std::to_string(i) + " (" + std::string(to_string(l.kind)) + ")";
}

void check_fields(std::size_t i, const LayerSpec& l) {
  auto fail = [&](const std::string& msg) { throw ArgumentError(where(i, l) + ": " + msg); };
  const bool has_units = l.units != 0, has_size = l.size != 0, has_stride = l.stride != 0;
  const bool has_p = l.dropout != 0.0;
  switch (l.kind) {
    case LayerKind::Input:
      if (!has_units) fail("input length must be positive");
      if (has_size || has_stride || has_p || l.relu) fail("input takes only a length");
      break;
    case LayerKind::Dropout:
      if (!(l.dropout >= 0.0 && l.dropout < 1.0)) fail("dropout probability must lie in [0, 1)");
      if (has_units || has_size || has_stride || l.relu) fail("dropout takes only a probability");
      break;
    case LayerKind::FullyConnected:
      if (!has_units) fail("unit count must be positive");
      if (has_size || has_stride || has_p) fail("fully connected takes only units and activation");
      break;
    case LayerKind::Convolution:
      if (!has_units || !has_size) fail("convolution needs channels and kernel width");
      if (l.stride != 1) fail("only stride 1 convolutions are supported");
      if (has_p) fail("convolution takes no probability");
      break;
    case LayerKind::Pooling:
      if (!has_size || !has_stride) fail("pooling needs size and stride");
      if (has_units || has_p || l.relu) fail("pooling takes only size and stride");
      break;
    case LayerKind::Softmax:
      if (has_units || has_size || has_stride || has_p || l.relu) fail("softmax takes no fields");
      break;
  }
}

}  // namespace

void NetworkSpec::validate() const {
  if (layers.size() < 3) throw ArgumentError("network needs at least input, fully connected and softmax layers");
  for (std::size_t i = 0; i < layers.size(); ++i) {
    check_fields(i, layers[i]);
    if (i > 0 && layers[i].kind == LayerKind::Input) throw ArgumentError(where(i, layers[i]) + ": input must come first");
    if (i + 1 < layers.size() && layers[i].kind == LayerKind::Softmax)
      throw ArgumentError(where(i, layers[i]) + ": softmax must be last");
  }
  if (layers.front().kind != LayerKind::Input) throw ArgumentError("layer 0 must be the input layer");
  const auto& head = layers[layers.size() - 2];
  if (layers.back().kind != LayerKind::Softmax || head.kind != LayerKind::FullyConnected)
    throw ArgumentError("network must end with a fully connected layer followed by softmax");
  if (head.relu) throw ArgumentError("the class layer feeding softmax must not have an activation");
  shape_infer(*this, input_length());
}

std::size_t NetworkSpec::input_length() const {
  if (layers.empty() || layers.front().kind != LayerKind::Input) throw ArgumentError("network has no input layer");
  return layers.front().units;
}

std::size_t NetworkSpec::num_classes() const {
  if (layers.size() < 2) throw ArgumentError("network has no class layer");
  return layers[layers.size() - 2].units;
}

NetworkSpec NetworkSpec::dnn(std::size_t num_classes, std::size_t input_length) {
  NetworkSpec s;
  s.layers.push_back(LayerSpec::input(input_length));
  s.layers.push_back(LayerSpec::drop(0.2));
  for (int i = 0; i < 5; ++i) {
    s.layers.push_back(LayerSpec::dense(384));
    s.layers.push_back(LayerSpec::drop(0.5));
  }
  s.layers.push_back(LayerSpec::dense(num_classes, false));
  s.layers.push_back(LayerSpec::softmax());
  return s;
}

NetworkSpec NetworkSpec::cnn(std::size_t num_classes, std::size_t input_length) {
  NetworkSpec s;
  s.layers.push_back(LayerSpec::input(input_length));
  s.layers.push_back(LayerSpec::drop(0.2));
  for (std::size_t ch : {48u, 96u, 192u, 384u}) {
    s.layers.push_back(LayerSpec::conv(ch, 9));
    s.layers.push_back(LayerSpec::pool(4, 4));
  }
  s.layers.push_back(LayerSpec::dense(384));
  s.layers.push_back(LayerSpec::drop(0.5));
  s.layers.push_back(LayerSpec::dense(384));
  s.layers.push_back(LayerSpec::drop(0.5));
  s.layers.push_back(LayerSpec::dense(num_classes, false));
  s.layers.push_back(LayerSpec::softmax());
  return s;
}

NetworkSpec NetworkSpec::preset(std::string_view name, std::size_t num_classes, std::size_t input_length) {
  if (name == "dnn") return dnn(num_classes, input_length);
  if (name == "cnn") return cnn(num_classes, input_length);
  throw ArgumentError("unknown architecture preset '" + std::string(name) + "'");
}

nlohmann::json NetworkSpec::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& l : layers) {
    nlohmann::json j{{"kind", std::string(to_string(l.kind))}};
    switch (l.kind) {
      case LayerKind::Input: j["units"] = l.units; break;
      case LayerKind::Dropout: j["probability"] = l.dropout; break;
      case LayerKind::FullyConnected:
        j["units"] = l.units;
        j["activation"] = l.relu ? "relu" : "none";
        break;
      case LayerKind::Convolution:
        j["units"] = l.units;
        j["size"] = l.size;
        j["stride"] = l.stride;
        j["activation"] = l.relu ? "relu" : "none";
        break;
      case LayerKind::Pooling:
        j["size"] = l.size;
        j["stride"] = l.stride;
        break;
      case LayerKind::Softmax: break;
    }
    arr.push_back(std::move(j));
  }
  return nlohmann::json{{"layers", std::move(arr)}};
}

NetworkSpec NetworkSpec::from_json(const nlohmann::json& j) {
  NetworkSpec s;
  try {
    for (const auto& e : j.at("layers")) {
      LayerSpec l;
      l.kind = parse_layer_kind(e.at("kind").get<std::string>());
      l.units = e.value("units", std::size_t{0});
      l.size = e.value("size", std::size_t{0});
      l.stride = e.value("stride", l.kind == LayerKind::Convolution ? std::size_t{1} : std::size_t{0});
      l.dropout = e.value("probability", 0.0);
      const std::string act =
          e.value("activation", l.kind == LayerKind::Convolution ? std::string("relu") : std::string("none"));
      if (act != "relu" && act != "none") throw ArgumentError("unknown activation '" + act + "'");
      l.relu = act == "relu";
      s.layers.push_back(l);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("network spec JSON: ") + e.what());
  }
  s.validate();
  return s;
}

std::vector<LayerShape> shape_infer(const NetworkSpec& spec, std::size_t input_len) {
  if (spec.layers.empty() || spec.layers.front().kind != LayerKind::Input)
    throw ShapeError("shape_infer: network has no input layer");
  if (spec.layers.front().units != input_len)
    throw ShapeError("shape_infer: input layer expects " + std::to_string(spec.layers.front().units) +
                     " values, got " + std::to_string(input_len));
  std::vector<LayerShape> shapes;
  shapes.reserve(spec.layers.size());
  LayerShape cur{1, input_len};
  for (std::size_t i = 0; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    switch (l.kind) {
      case LayerKind::Input:
      case LayerKind::Dropout:
      case LayerKind::Softmax: break;
      case LayerKind::FullyConnected: cur = {1, l.units}; break;
      case LayerKind::Convolution:
        if (l.size > cur.cols)
          throw ShapeError(where(i, l) + ": kernel " + std::to_string(l.size) + " wider than input length " +
                           std::to_string(cur.cols));
        cur = {l.units, cur.cols - l.size + 1};
        break;
      case LayerKind::Pooling:
        if (l.size > cur.cols || l.stride == 0)
          throw ShapeError(where(i, l) + ": pool " + std::to_string(l.size) + " wider than input length " +
                           std::to_string(cur.cols));
        cur = {cur.rows, (cur.cols - l.size) / l.stride + 1};
        break;
    }
    shapes.push_back(cur);
  }
  return shapes;
}

ParamCensus param_count(const NetworkSpec& spec) {
  const auto shapes = shape_infer(spec, spec.input_length());
  ParamCensus c;
  c.per_layer.assign(spec.layers.size(), 0);
  for (std::size_t i = 1; i < spec.layers.size(); ++i) {
    const auto& l = spec.layers[i];
    const LayerShape in = shapes[i - 1];
    if (l.kind == LayerKind::FullyConnected) c.per_layer[i] = in.size() * l.units + l.units;
    if (l.kind == LayerKind::Convolution) c.per_layer[i] = l.units * (l.size * in.rows) + l.units;
    c.total += c.per_layer[i];
  }
  return c;
}

}  // namespace aer

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

// aer: command-line front end for synthesis, preprocessing, training, evaluation and the
// time/frequency comparison grid.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "aer/checkpoint.hpp"
#include "aer/dataset.hpp"
#include "aer/errors.hpp"
#include "aer/evaluator.hpp"
#include "aer/experiment.hpp"
#include "aer/frame_cache.hpp"
#include "aer/pipeline.hpp"
#include "aer/simd/kernels.hpp"
#include "aer/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

// ---------------------------------------------------------------------------------------------
// Output locations

struct OutputOptions {
  std::string root;     // parent of timestamped run directories
  std::string run_dir;  // exact directory, overrides root
};

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--out", o.root, "Output root; defaults to $AER_OUTPUT_ROOT, then ./runs");
  app->add_option("--run-dir", o.run_dir, "Exact run directory (no timestamp)");
}

fs::path make_run_dir(const OutputOptions& o, const std::string& command, std::uint64_t seed) {
  fs::path dir;
  if (!o.run_dir.empty()) {
    dir = o.run_dir;
  } else {
    fs::path root = o.root;
    if (root.empty()) {
      const char* env = std::getenv("AER_OUTPUT_ROOT");
      root = env && *env ? env : "runs";
    }
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", &tm);
    const std::string base = command + "-" + stamp + "-seed" + std::to_string(seed);
    dir = root / base;
    for (int i = 2; fs::exists(dir); ++i) dir = root / (base + "-" + std::to_string(i));
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw aer::IoError("cannot create run directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw aer::IoError("cannot write " + path.string());
  out << text;
  if (!out) throw aer::IoError("failed writing " + path.string());
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw aer::ArgumentError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw aer::ArgumentError(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------------------------
// Resolved run configuration (also the run record and the --config file format)

struct RunConfig {
  std::string arch = "dnn";
  std::optional<json> spec;  // custom network in place of the preset
  std::string features = "freq";
  std::string manifest;
  std::string frames;  // preprocess output directory, used instead of the manifest
  std::string split = "alternate";
  std::size_t folds = 5;
  int fold = 0;
  bool validate = true;
  aer::TrainConfig train;

  json to_json() const {
    json j;
    j["arch"] = arch;
    if (spec) j["spec"] = *spec;
    j["features"] = features;
    if (!manifest.empty()) j["manifest"] = manifest;
    if (!frames.empty()) j["frames"] = frames;
    j["split"] = split;
    j["folds"] = folds;
    j["fold"] = fold;
    j["validate"] = validate;
    j["epochs"] = train.epochs;
    j["base_lr"] = train.base_lr;
    j["lr_halving_period"] = train.lr_halving_period;
    j["schedule"] = std::string(aer::to_string(train.schedule));
    j["batch_size"] = train.batch_size;
    j["momentum"] = train.momentum;
    j["max_norm_limit"] = train.max_norm_limit;
    j["seed"] = train.seed;
    return j;
  }
};

// Flags that may override the config file. Unset flags leave lower-precedence values alone.
struct RunFlags {
  std::optional<std::string> arch, spec, features, manifest, frames, split, schedule, config;
  std::optional<std::size_t> folds, epochs, lr_period, batch;
  std::optional<int> fold;
  std::optional<double> lr, momentum, max_norm;
  std::optional<std::uint64_t> seed;
  bool no_validate = false;
  std::size_t checkpoint_every = 0;
};

void add_data_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--manifest", f.manifest, "Manifest CSV (path,label,fold)");
  app->add_option("--features", f.features, "time | freq | freq-mag | freq-phase");
  app->add_option("--split", f.split, "alternate | kfold");
  app->add_option("--folds", f.folds, "Fold count for kfold");
  app->add_option("--fold", f.fold, "Held-out fold for kfold");
}

void add_train_flags(CLI::App* app, RunFlags& f) {
  app->add_option("--config", f.config, "JSON config; flags take precedence over it");
  app->add_option("--arch", f.arch, "dnn | cnn");
  app->add_option("--spec", f.spec, "Custom network spec JSON instead of the preset");
  app->add_option("--epochs", f.epochs);
  app->add_option("--lr", f.lr, "Initial learning rate");
  app->add_option("--lr-period", f.lr_period, "Epochs between learning-rate halvings");
  app->add_option("--schedule", f.schedule, "recurring | single");
  app->add_option("--batch", f.batch);
  app->add_option("--momentum", f.momentum);
  app->add_option("--max-norm", f.max_norm);
  app->add_option("--seed", f.seed);
  app->add_flag("--no-validate", f.no_validate, "Skip the per-epoch validation f-score");
  app->add_option("--checkpoint-every", f.checkpoint_every, "Also write a checkpoint every N epochs");
}

template <typename T>
void overlay(const json& cfg, const char* key, T& dst) {
  if (!cfg.contains(key)) return;
  try {
    dst = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw aer::ArgumentError(std::string("config key '") + key + "': " + e.what());
  }
}

RunConfig resolve(const RunFlags& f) {
  json cfg = json::object();
  if (f.config) cfg = read_json(*f.config);
  if (!cfg.is_object()) throw aer::ArgumentError("config must be a JSON object");

  RunConfig rc;
  overlay(cfg, "arch", rc.arch);
  if (f.arch) rc.arch = *f.arch;
  if (rc.arch != "dnn" && rc.arch != "cnn") throw aer::ArgumentError("unknown architecture '" + rc.arch + "'");
  rc.train = aer::TrainConfig::preset(rc.arch);

  if (cfg.contains("spec")) {
    const json& s = cfg["spec"];
    rc.spec = s.is_string() ? read_json(s.get<std::string>()) : s;
  }
  overlay(cfg, "features", rc.features);
  overlay(cfg, "manifest", rc.manifest);
  overlay(cfg, "frames", rc.frames);
  overlay(cfg, "split", rc.split);
  overlay(cfg, "folds", rc.folds);
  overlay(cfg, "fold", rc.fold);
  overlay(cfg, "validate", rc.validate);
  overlay(cfg, "epochs", rc.train.epochs);
  overlay(cfg, "base_lr", rc.train.base_lr);
  overlay(cfg, "lr_halving_period", rc.train.lr_halving_period);
  std::string schedule(aer::to_string(rc.train.schedule));
  overlay(cfg, "schedule", schedule);
  overlay(cfg, "batch_size", rc.train.batch_size);
  overlay(cfg, "momentum", rc.train.momentum);
  overlay(cfg, "max_norm_limit", rc.train.max_norm_limit);
  overlay(cfg, "seed", rc.train.seed);

  if (f.spec) rc.spec = read_json(*f.spec);
  if (f.features) rc.features = *f.features;
  if (f.manifest) rc.manifest = *f.manifest;
  if (f.frames) rc.frames = *f.frames;
  if (f.split) rc.split = *f.split;
  if (f.folds) rc.folds = *f.folds;
  if (f.fold) rc.fold = *f.fold;
  if (f.no_validate) rc.validate = false;
  if (f.epochs) rc.train.epochs = *f.epochs;
  if (f.lr) rc.train.base_lr = *f.lr;
  if (f.lr_period) rc.train.lr_halving_period = *f.lr_period;
  if (f.schedule) schedule = *f.schedule;
  if (f.batch) rc.train.batch_size = *f.batch;
  if (f.momentum) rc.train.momentum = *f.momentum;
  if (f.max_norm) rc.train.max_norm_limit = *f.max_norm;
  if (f.seed) rc.train.seed = *f.seed;

  rc.train.schedule = aer::parse_lr_schedule(schedule);
  rc.train.validate();
  aer::parse_feature_mode(rc.features);
  if (rc.split != "alternate" && rc.split != "kfold") throw aer::ArgumentError("unknown split '" + rc.split + "'");
  if (!rc.manifest.empty()) {
    if (!fs::exists(rc.manifest)) throw aer::ArgumentError("manifest not found: " + rc.manifest);
    rc.manifest = fs::absolute(rc.manifest).lexically_normal().string();
  }
  if (!rc.frames.empty()) {
    if (!fs::is_directory(rc.frames)) throw aer::ArgumentError("frames directory not found: " + rc.frames);
    rc.frames = fs::absolute(rc.frames).lexically_normal().string();
  }
  return rc;
}

aer::SplitPlan make_split(const aer::Manifest& m, const std::string& split, std::size_t folds, int fold) {
  auto plan = split == "kfold" ? aer::kfold_split(m, folds, fold) : aer::alternate_split(m);
  for (const auto& w : plan.warnings) std::cerr << "warning: " << w << '\n';
  return plan;
}

// Train/test frames plus the class table, from a manifest or a preprocess directory.
struct Data {
  aer::FrameSet train, test;
  std::vector<std::string> class_names;
};

Data load_data(const RunConfig& rc) {
  const auto mode = aer::parse_feature_mode(rc.features);
  Data d;
  if (!rc.frames.empty()) {
    const fs::path dir = rc.frames;
    const json info = read_json(dir / "frames.json");
    d.class_names = info.at("class_names").get<std::vector<std::string>>();
    d.train = aer::read_frame_cache(dir / "train.frames");
    d.test = aer::read_frame_cache(dir / "test.frames");
    if (d.train.mode != mode)
      throw aer::ArgumentError("frames in " + dir.string() + " are " + std::string(aer::to_string(d.train.mode)) +
                               ", not " + rc.features);
    return d;
  }
  if (rc.manifest.empty()) throw aer::ArgumentError("either --manifest or --frames is required");
  const auto m = aer::load_manifest(rc.manifest);
  const auto plan = make_split(m, rc.split, rc.folds, rc.fold);
  d.class_names = m.class_names;
  d.train = aer::build_frames(m, plan.train, mode);
  d.test = aer::build_frames(m, plan.test, mode);
  return d;
}

void print_epoch(const aer::EpochMetrics& e) {
  std::fprintf(stderr, "epoch %3zu  lr %.5g  loss %.5f  train-f %.4f", e.epoch, e.lr, e.train_loss, e.train_frame_fscore);
  if (e.val_frame_fscore) std::fprintf(stderr, "  val-f %.4f", *e.val_frame_fscore);
  std::fputc('\n', stderr);
}

// ---------------------------------------------------------------------------------------------
// Commands

struct SynthArgs {
  std::size_t classes = 4, clips = 40, folds = 5;
  double seconds = 1.0, snr = 10.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthArgs& a) {
  aer::SynthConfig cfg;
  cfg.recipes = aer::default_recipes(a.classes);
  cfg.clips_per_class = a.clips;
  cfg.clip_seconds = a.seconds;
  cfg.snr_db = a.snr;
  cfg.seed = a.seed;
  cfg.folds = a.folds;
  aer::synth_corpus(cfg, a.out);
  std::cout << (fs::path(a.out) / "manifest.csv").string() << '\n';
  return kExitOk;
}

int cmd_preprocess(const RunFlags& f, const OutputOptions& o) {
  RunConfig rc = resolve(f);
  if (rc.manifest.empty()) throw aer::ArgumentError("--manifest is required");
  const Data d = load_data(rc);
  const fs::path dir = make_run_dir(o, "preprocess", rc.train.seed);
  aer::write_frame_cache(dir / "train.frames", d.train);
  aer::write_frame_cache(dir / "test.frames", d.test);
  json info = {{"features", rc.features},   {"manifest", rc.manifest}, {"split", rc.split},
               {"folds", rc.folds},         {"fold", rc.fold},         {"class_names", d.class_names},
               {"train_frames", d.train.size()}, {"test_frames", d.test.size()}};
  write_text(dir / "frames.json", info.dump(2) + "\n");
  std::cout << dir.string() << '\n';
  return kExitOk;
}

int cmd_train(const RunFlags& f, const OutputOptions& o) {
  const RunConfig rc = resolve(f);
  const auto mode = aer::parse_feature_mode(rc.features);
  const Data d = load_data(rc);
  std::optional<aer::NetworkSpec> custom;
  if (rc.spec) custom = aer::NetworkSpec::from_json(*rc.spec);
  const auto spec = aer::resolve_network(rc.arch, mode, d.class_names.size(), custom);

  const fs::path dir = make_run_dir(o, "train", rc.train.seed);
  json record = rc.to_json();
  record["command"] = "train";
  record["resolved_network"] = spec.to_json();
  write_text(dir / "run.json", record.dump(2) + "\n");

  aer::Network<float> net(spec);
  aer::Rng rng = aer::init_rng(rc.train.seed);
  net.init_glorot(rng);
  const json meta = {{"arch", rc.arch}, {"features", rc.features}, {"class_names", d.class_names}, {"seed", rc.train.seed}};
  aer::FitHooks hooks;
  hooks.on_epoch = [&](const aer::Network<float>& n, const aer::EpochMetrics& e) {
    print_epoch(e);
    if (f.checkpoint_every && (e.epoch + 1) % f.checkpoint_every == 0)
      aer::save_checkpoint(dir / ("checkpoint-epoch" + std::to_string(e.epoch + 1) + ".aer"), n, meta);
  };
  const auto result = aer::fit(net, d.train, rc.train, rc.validate && !d.test.empty() ? &d.test : nullptr, hooks);
  write_text(dir / "metrics.csv", aer::metrics_csv(result.epochs));
  aer::save_checkpoint(dir / "checkpoint.aer", net, meta);
  std::cout << (dir / "checkpoint.aer").string() << '\n';
  return kExitOk;
}

struct EvalArgs {
  std::string checkpoint;
  std::string voting = "probability";
};

int cmd_eval(const EvalArgs& a, RunFlags f, const OutputOptions& o) {
  auto ckpt = aer::load_checkpoint(a.checkpoint);
  const auto voting = aer::parse_voting(a.voting);
  const std::string ckpt_features = ckpt.meta.value("features", std::string{});
  if (f.features && !ckpt_features.empty() && *f.features != ckpt_features)
    throw aer::ArgumentError("checkpoint was trained on " + ckpt_features + " features, not " + *f.features);
  if (!f.features && !ckpt_features.empty()) f.features = ckpt_features;
  const RunConfig rc = resolve(f);
  const auto mode = aer::parse_feature_mode(rc.features);
  if (ckpt.network.input_length() != aer::feature_length(mode))
    throw aer::ArgumentError("checkpoint expects inputs of length " + std::to_string(ckpt.network.input_length()) + ", " +
                             rc.features + " features have length " + std::to_string(aer::feature_length(mode)));
  const Data d = load_data(rc);
  if (ckpt.meta.contains("class_names") && ckpt.meta["class_names"].get<std::vector<std::string>>() != d.class_names)
    throw aer::ArgumentError("manifest classes differ from the checkpoint's");
  if (ckpt.network.num_classes() != d.class_names.size())
    throw aer::ArgumentError("checkpoint has " + std::to_string(ckpt.network.num_classes()) + " outputs, data has " +
                             std::to_string(d.class_names.size()) + " classes");

  const auto report = aer::evaluate(ckpt.network, d.test, voting, d.class_names);
  const fs::path dir = make_run_dir(o, "eval", ckpt.meta.value("seed", std::uint64_t{0}));
  json record = rc.to_json();
  record["command"] = "eval";
  record["checkpoint"] = fs::absolute(a.checkpoint).lexically_normal().string();
  record["voting"] = std::string(aer::to_string(voting));
  write_text(dir / "run.json", record.dump(2) + "\n");
  write_text(dir / "report.txt", report.to_text());
  write_text(dir / "report.csv", report.to_csv());
  write_text(dir / "confusion.csv", report.confusion_csv());
  std::cout << report.to_text();
  return kExitOk;
}

struct CompareArgs {
  std::vector<std::string> archs = {"dnn", "cnn"};
  std::vector<std::string> features = {"time", "freq"};
  std::size_t seeds = 1;
};

int cmd_compare(const CompareArgs& a, const RunFlags& f, const OutputOptions& o) {
  if (a.seeds < 1) throw aer::ArgumentError("--seeds must be at least 1");
  if (f.arch || f.spec || f.features) throw aer::ArgumentError("compare takes --archs and --feature-modes instead");
  RunFlags base = f;
  const RunConfig rc0 = resolve(base);
  if (rc0.manifest.empty()) throw aer::ArgumentError("--manifest is required");
  for (const auto& arch : a.archs)
    if (arch != "dnn" && arch != "cnn") throw aer::ArgumentError("unknown architecture '" + arch + "'");
  std::vector<aer::FeatureMode> modes;
  for (const auto& m : a.features) modes.push_back(aer::parse_feature_mode(m));

  const auto manifest = aer::load_manifest(rc0.manifest);
  const auto plan = make_split(manifest, rc0.split, rc0.folds, rc0.fold);
  const auto train_clips = aer::load_clips(manifest, plan.train);
  const auto test_clips = aer::load_clips(manifest, plan.test);
  // Frames are computed once per feature mode and shared by every cell using it.
  std::map<aer::FeatureMode, std::pair<aer::FrameSet, aer::FrameSet>> frames;
  for (auto m : modes)
    if (!frames.count(m)) frames[m] = {aer::build_frames(train_clips, m), aer::build_frames(test_clips, m)};

  const fs::path dir = make_run_dir(o, "compare", rc0.train.seed);
  json record = rc0.to_json();
  record.erase("arch");
  record.erase("features");
  record["command"] = "compare";
  record["archs"] = a.archs;
  record["feature_modes"] = a.features;
  record["seeds"] = a.seeds;
  write_text(dir / "run.json", record.dump(2) + "\n");

  std::string results = "arch,features,seed,macro_fscore,status\n";
  std::string all_curves = "arch,features,seed,epoch,lr,train_loss,train_frame_fscore,val_frame_fscore\n";
  std::map<std::pair<std::string, std::string>, std::vector<double>> scores;
  std::map<std::pair<std::string, std::string>, bool> failed;
  bool any_failed = false, any_diverged = false;

  for (const auto& arch : a.archs) {
    for (std::size_t mi = 0; mi < modes.size(); ++mi) {
      const auto mode = modes[mi];
      const std::string mode_name(aer::to_string(mode));
      std::string curves = "seed,epoch,lr,train_loss,train_frame_fscore,val_frame_fscore\n";
      for (std::size_t s = 0; s < a.seeds; ++s) {
        RunFlags cell_flags = f;
        cell_flags.arch = arch;
        cell_flags.features = mode_name;
        RunConfig rc = resolve(cell_flags);
        rc.train.seed = rc0.train.seed + s;
        aer::CellSpec cell;
        cell.arch = arch;
        cell.mode = mode;
        cell.train = rc.train;
        cell.track_validation = rc.validate;
        const auto seed_str = std::to_string(rc.train.seed);
        std::fprintf(stderr, "[%s/%s seed %s]\n", arch.c_str(), mode_name.c_str(), seed_str.c_str());
        try {
          cell.network = aer::resolve_network(arch, mode, manifest.num_classes());
          aer::FitHooks hooks;
          hooks.on_epoch = [](const aer::Network<float>&, const aer::EpochMetrics& e) { print_epoch(e); };
          const auto r = aer::run_cell(cell, frames[mode].first, frames[mode].second, manifest.class_names, hooks);
          scores[{arch, mode_name}].push_back(r.report.macro_fscore);
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.9g", r.report.macro_fscore);
          results += arch + "," + mode_name + "," + seed_str + "," + buf + ",ok\n";
          std::istringstream lines(aer::metrics_csv(r.curve));
          std::string line;
          std::getline(lines, line);
          while (std::getline(lines, line)) {
            curves += seed_str + "," + line + "\n";
            all_curves += arch + "," + mode_name + "," + seed_str + "," + line + "\n";
          }
        } catch (const aer::DivergenceError& e) {
          std::cerr << "error: " << e.what() << '\n';
          results += arch + "," + mode_name + "," + seed_str + ",,diverged\n";
          failed[{arch, mode_name}] = any_failed = any_diverged = true;
        } catch (const aer::Error& e) {
          std::cerr << "error: " << e.what() << '\n';
          results += arch + "," + mode_name + "," + seed_str + ",,failed\n";
          failed[{arch, mode_name}] = any_failed = true;
        }
      }
      write_text(dir / ("curves_" + arch + "_" + mode_name + ".csv"), curves);
    }
  }
  write_text(dir / "results.csv", results);
  write_text(dir / "curves.csv", all_curves);

  // Table: rows are architectures, columns feature modes, cells median [min, max] in percent.
  std::ostringstream table;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%-6s", "");
  table << buf;
  for (const auto& m : a.features) {
    std::snprintf(buf, sizeof buf, " %26s", m.c_str());
    table << buf;
  }
  table << '\n';
  for (const auto& arch : a.archs) {
    std::snprintf(buf, sizeof buf, "%-6s", arch.c_str());
    table << buf;
    for (const auto& m : a.features) {
      const auto key = std::make_pair(arch, std::string(aer::to_string(aer::parse_feature_mode(m))));
      if (failed.count(key) || scores[key].empty()) {
        std::snprintf(buf, sizeof buf, " %26s", "failed");
      } else {
        const auto sp = aer::spread(scores[key]);
        if (a.seeds > 1)
          std::snprintf(buf, sizeof buf, " %8.1f [%6.1f, %6.1f]", 100 * sp.median, 100 * sp.min, 100 * sp.max);
        else
          std::snprintf(buf, sizeof buf, " %26.1f", 100 * sp.median);
      }
      table << buf;
    }
    table << '\n';
  }
  write_text(dir / "summary.txt", table.str());
  std::cout << table.str() << "results: " << dir.string() << '\n';
  if (any_diverged) return kExitNumeric;
  return any_failed ? kExitOther : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Audio event recognition in the time and frequency domains"};
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Force a kernel set: scalar | avx2");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic tone/noise corpus with a manifest");
  synth->add_option("--classes", synth_args.classes, "Number of classes (2-15)")->capture_default_str();
  synth->add_option("--clips", synth_args.clips, "Clips per class")->capture_default_str();
  synth->add_option("--seconds", synth_args.seconds, "Clip length")->capture_default_str();
  synth->add_option("--snr", synth_args.snr, "Signal-to-noise ratio in dB")->capture_default_str();
  synth->add_option("--folds", synth_args.folds, "Fold count written to the manifest")->capture_default_str();
  synth->add_option("--seed", synth_args.seed)->capture_default_str();
  synth->add_option("--out", synth_args.out, "Corpus directory")->required();

  RunFlags pre_flags;
  OutputOptions pre_out;
  auto* pre = app.add_subcommand("preprocess", "Compute train/test frame caches for a manifest split");
  add_data_flags(pre, pre_flags);
  add_output_options(pre, pre_out);

  RunFlags train_flags;
  OutputOptions train_out;
  auto* train = app.add_subcommand("train", "Train one network; writes checkpoint, metrics and run record");
  add_data_flags(train, train_flags);
  add_train_flags(train, train_flags);
  train->add_option("--frames", train_flags.frames, "Preprocess output directory instead of --manifest");
  add_output_options(train, train_out);

  RunFlags eval_flags;
  EvalArgs eval_args;
  OutputOptions eval_out;
  auto* eval = app.add_subcommand("eval", "Evaluate a checkpoint with file-level voting");
  eval->add_option("--checkpoint", eval_args.checkpoint)->required();
  eval->add_option("--voting", eval_args.voting, "probability | majority")->capture_default_str();
  add_data_flags(eval, eval_flags);
  eval->add_option("--frames", eval_flags.frames, "Preprocess output directory instead of --manifest");
  add_output_options(eval, eval_out);

  RunFlags cmp_flags;
  CompareArgs cmp_args;
  OutputOptions cmp_out;
  auto* cmp = app.add_subcommand("compare", "Train and evaluate the architecture x feature grid");
  add_data_flags(cmp, cmp_flags);
  add_train_flags(cmp, cmp_flags);
  cmp->add_option("--archs", cmp_args.archs, "Architectures")->delimiter(',')->capture_default_str();
  cmp->add_option("--feature-modes", cmp_args.features, "Feature modes")->delimiter(',')->capture_default_str();
  cmp->add_option("--seeds", cmp_args.seeds, "Seeds per cell, starting at --seed")->capture_default_str();
  add_output_options(cmp, cmp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (isa == "scalar") aer::simd::select_isa(aer::simd::Isa::Scalar);
    else if (isa == "avx2") aer::simd::select_isa(aer::simd::Isa::Avx2);
    else if (!isa.empty()) throw aer::ArgumentError("unknown --isa '" + isa + "'");
    if (*synth) return cmd_synth(synth_args);
    if (*pre) return cmd_preprocess(pre_flags, pre_out);
    if (*train) return cmd_train(train_flags, train_out);
    if (*eval) return cmd_eval(eval_args, eval_flags, eval_out);
    if (*cmp) return cmd_compare(cmp_args, cmp_flags, cmp_out);
  } catch (const aer::DivergenceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const aer::ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const aer::ShapeError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}

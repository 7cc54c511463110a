// Copyright 2026 The qcnn-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qcnn: dataset generation, training, evaluation and feature-map demo.
//
// Exit codes: 0 success, 2 usage or validation error, 3 frontier width limit.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "qcnn/qcnn.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

template <typename E>
std::map<std::string, E> choices(std::initializer_list<std::pair<const std::string, E>> items) {
  return std::map<std::string, E>(items);
}

const auto kGradChoices = choices<qcnn::GradMethod>(
    {{"sigmoid", qcnn::GradMethod::Sigmoid}, {"shift", qcnn::GradMethod::Shift}, {"combined", qcnn::GradMethod::Combined}});
const auto kMeasureChoices = choices<qcnn::MeasureMode>(
    {{"end-to-end", qcnn::MeasureMode::EndToEnd}, {"intermediate", qcnn::MeasureMode::Intermediate}});
const auto kUpdateChoices = choices<qcnn::UpdateStrategy>(
    {{"simultaneous", qcnn::UpdateStrategy::Simultaneous}, {"layer-wise", qcnn::UpdateStrategy::LayerWise}});
const auto kEvalChoices =
    choices<qcnn::EvalMode>({{"exact", qcnn::EvalMode::Exact}, {"sampled", qcnn::EvalMode::Sampled}});
const auto kArchChoices = choices<qcnn::Architecture>({{"conv", qcnn::Architecture::Conv},
                                                       {"conv-pool-pool", qcnn::Architecture::ConvPoolPool},
                                                       {"conv-pool-conv-pool", qcnn::Architecture::ConvPoolConvPool}});
const auto kInitChoices =
    choices<qcnn::InitScheme>({{"uniform", qcnn::InitScheme::Uniform}, {"zeros", qcnn::InitScheme::Zeros}});

template <typename E>
CLI::Option* add_choice(CLI::App* app, const std::string& name, E& target, const std::map<std::string, E>& map,
                        const std::string& help) {
  return app->add_option(name, target, help)->transform(CLI::CheckedTransformer(map, CLI::ignore_case));
}

std::vector<qcnn::LabeledImage> training_data(const std::string& path, std::size_t size, std::size_t side,
                                              std::uint64_t seed) {
  if (!path.empty()) {
    auto data = qcnn::load_dataset(path);
    if (data.empty()) throw std::invalid_argument("dataset " + path + " is empty");
    if (data.front().side != side)
      throw std::invalid_argument("dataset " + path + " has side " + std::to_string(data.front().side) +
                                  ", architecture needs " + std::to_string(side));
    return data;
  }
  return qcnn::gen_dataset(size, side, seed);
}

struct GenArgs {
  std::size_t side = 2;
  std::size_t count = 1000;
  std::uint64_t seed = 0;
  std::string out;
};

int run_gen(const GenArgs& a) {
  const auto data = qcnn::gen_dataset(a.count, a.side, a.seed);
  qcnn::save_dataset(data, a.out);
  std::size_t ones = 0;
  for (const auto& s : data) ones += static_cast<std::size_t>(s.label);
  std::printf("wrote %zu samples to %s (label 1: %zu, %.4f)\n", data.size(), a.out.c_str(), ones,
              static_cast<double>(ones) / static_cast<double>(data.size()));
  return 0;
}

struct TrainArgs {
  qcnn::TrainConfig config;
  std::string data;
  std::size_t dataset_size = 0;  // 0: same as batch size
  std::string curve = "curve.csv";
  std::string params_out = "params.txt";
  std::string log = "train.log";
};

int run_train(TrainArgs a) {
  auto& cfg = a.config;
  cfg.validate();
  const std::size_t side = qcnn::image_side(cfg.arch);
  const auto data = training_data(a.data, a.dataset_size ? a.dataset_size : cfg.batch_size, side, cfg.seed);
  const auto init = qcnn::init_params(cfg.arch, qcnn::derive_seed(cfg.seed, 1), cfg.init);

  std::ofstream log(a.log, std::ios::binary);
  if (!log) throw std::runtime_error("cannot open " + a.log + " for writing");
  const auto t0 = std::chrono::steady_clock::now();
  const auto result = qcnn::train(cfg, data, init, [&](const qcnn::EpochRecord& r) {
    char line[160];
    std::snprintf(line, sizeof line, "epoch=%zu mse=%.12f millis=%.3f circuit_runs=%llu\n", r.epoch, r.mse,
                  r.millis, static_cast<unsigned long long>(r.circuit_runs));
    log << line << std::flush;
  });
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  qcnn::save_curve(result.curve, a.curve);
  qcnn::save_params(result.params, a.params_out);
  std::printf("arch=%s epochs=%zu final_mse=%.12f circuit_runs=%llu wall_clock_s=%.3f\n",
              std::string(qcnn::arch_name(cfg.arch)).c_str(), cfg.epochs, result.curve.records.back().mse,
              static_cast<unsigned long long>(result.circuit_runs), seconds);
  return 0;
}

struct EvalArgs {
  std::string params;
  std::string data;
  std::string arch;
  qcnn::MeasureMode measure = qcnn::MeasureMode::EndToEnd;
  qcnn::EvalMode eval = qcnn::EvalMode::Exact;
  std::size_t shots = 1000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
};

int run_eval(const EvalArgs& a) {
  const auto data = qcnn::load_dataset(a.data);
  if (data.empty()) throw std::invalid_argument("dataset " + a.data + " is empty");
  const auto arch = a.arch.empty() ? qcnn::arch_for_side(data.front().side) : qcnn::parse_arch(a.arch);
  const auto params = qcnn::load_params(a.params);
  qcnn::check_params(arch, params);
  const qcnn::Evaluator ev(arch, a.measure, a.eval, a.shots);
  const auto report = qcnn::evaluate(ev, params, data, a.threshold, a.seed, a.jobs);
  std::printf("arch=%s samples=%zu mse=%.12f accuracy=%.6f\n", std::string(qcnn::arch_name(arch)).c_str(),
              report.samples, report.mse, report.accuracy);
  return 0;
}

struct FeatmapArgs {
  std::string in;
  std::string params;
  std::string out;
};

int run_featmap(const FeatmapArgs& a) {
  const auto img = qcnn::load_pgm(a.in);
  const auto kernel = qcnn::load_params(a.params);
  const auto map = qcnn::conv_feature_map(img.pixels, img.width, img.height, kernel);
  qcnn::save_pgm(qcnn::probabilities_to_gray(map.width, map.height, map.values), a.out);
  std::printf("wrote %zux%zu feature map to %s\n", map.width, map.height, a.out.c_str());
  return 0;
}

struct BaselineArgs {
  qcnn::TrainConfig config;
  std::string data;
  std::size_t dataset_size = 0;
  std::string curve = "baseline_curve.csv";
};

int run_baseline(const BaselineArgs& a) {
  const auto& cfg = a.config;
  if (!(cfg.learning_rate >= 0)) throw std::invalid_argument("learning rate must be non-negative");
  const auto data = training_data(a.data, a.dataset_size ? a.dataset_size : cfg.batch_size, 2, cfg.seed);
  const auto result = qcnn::classical_train(cfg, data, qcnn::init_classical_kernel(qcnn::derive_seed(cfg.seed, 1)));
  qcnn::save_curve(result.curve, a.curve);
  std::printf("classical epochs=%zu final_mse=%.12f\n", cfg.epochs, result.curve.records.back().mse);
  return 0;
}

// Fills options not given on the command line from a key = value file,
// then QCNN_SEED as a last resort for --seed.
void apply_config(CLI::App* cmd, const std::string& path) {
  if (!path.empty()) {
    for (const auto& item : CLI::ConfigINI().from_file(path)) {
      if (!item.parents.empty() && !(item.parents.size() == 1 && item.parents[0] == "default"))
        throw CLI::ConfigError("sections are not supported in " + path + ": " + item.fullname());
      auto* opt = cmd->get_option_no_throw("--" + item.name);
      if (opt == nullptr || item.name == "config") throw CLI::ConfigError("unknown key '" + item.name + "'");
      if (opt->count() > 0) continue;
      opt->add_result(item.inputs);
      opt->run_callback();
    }
  }
  auto* seed = cmd->get_option("--seed");
  if (seed->count() == 0) {
    if (const char* env = std::getenv("QCNN_SEED")) {
      seed->add_result(std::string(env));
      seed->run_callback();
    }
  }
}

void add_train_options(CLI::App* cmd, qcnn::TrainConfig& c) {
  add_choice(cmd, "--arch", c.arch, kArchChoices, "conv | conv-pool-pool | conv-pool-conv-pool");
  cmd->add_option("--epochs", c.epochs, "Training epochs")->check(CLI::PositiveNumber);
  cmd->add_option("--batch", c.batch_size, "Batch size")->check(CLI::PositiveNumber);
  cmd->add_option("--lr", c.learning_rate, "Learning rate")->check(CLI::PositiveNumber);
  cmd->add_option("--shots", c.shots, "Shots per measured wire in sampled mode")->check(CLI::PositiveNumber);
  add_choice(cmd, "--grad", c.grad_method, kGradChoices, "sigmoid | shift | combined");
  add_choice(cmd, "--measure", c.measure_mode, kMeasureChoices, "end-to-end | intermediate");
  add_choice(cmd, "--update", c.update_strategy, kUpdateChoices, "simultaneous | layer-wise");
  add_choice(cmd, "--eval-mode", c.eval_mode, kEvalChoices, "exact | sampled");
  cmd->add_option("--threshold", c.threshold, "Classification threshold on the activated output")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", c.seed, "Seed for data, initialization and sampling (env QCNN_SEED)");
  add_choice(cmd, "--init", c.init, kInitChoices, "uniform | zeros");
  cmd->add_flag("--fresh", c.fresh_batches, "Draw a new batch every epoch");
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--width-cap", c.width_cap, "Maximum simultaneously simulated wires")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum convolutional neural network simulator and trainer"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a labeled synthetic image dataset");
  gen_cmd->add_option("--side", gen.side, "Image side length")->required()->check(CLI::IsMember({2, 4, 8}));
  gen_cmd->add_option("--count", gen.count, "Number of samples")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Generator seed")->envname("QCNN_SEED");
  gen_cmd->add_option("--out", gen.out, "Output CSV path")->required();

  TrainArgs tr;
  tr.config.jobs = qcnn::default_jobs();
  auto* train_cmd = app.add_subcommand("train", "Train a QCNN and write its loss curve and parameters");
  std::string train_config;
  train_cmd->add_option("--config", train_config, "Key = value file; flags on the command line take precedence");
  add_train_options(train_cmd, tr.config);
  train_cmd->add_option("--data", tr.data, "Training dataset CSV (default: generate from --seed)");
  train_cmd->add_option("--dataset-size", tr.dataset_size, "Generated training set size (default: --batch)");
  train_cmd->add_option("--curve", tr.curve, "Loss curve CSV output");
  train_cmd->add_option("--params-out", tr.params_out, "Trained parameters output");
  train_cmd->add_option("--log", tr.log, "Per-epoch training log");

  EvalArgs ev;
  ev.jobs = qcnn::default_jobs();
  auto* eval_cmd = app.add_subcommand("eval", "Report MSE and accuracy of trained parameters on a dataset");
  eval_cmd->add_option("--params", ev.params, "Parameters file")->required();
  eval_cmd->add_option("--data", ev.data, "Dataset CSV")->required();
  eval_cmd->add_option("--arch", ev.arch, "Architecture (default: from image size)");
  add_choice(eval_cmd, "--measure", ev.measure, kMeasureChoices, "end-to-end | intermediate");
  add_choice(eval_cmd, "--eval-mode", ev.eval, kEvalChoices, "exact | sampled");
  eval_cmd->add_option("--shots", ev.shots, "Shots in sampled mode")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--threshold", ev.threshold, "Classification threshold")->check(CLI::Range(0.0, 1.0));
  eval_cmd->add_option("--seed", ev.seed, "Sampling seed")->envname("QCNN_SEED");
  eval_cmd->add_option("--jobs", ev.jobs, "Worker threads")->check(CLI::PositiveNumber);

  FeatmapArgs fm;
  auto* fm_cmd = app.add_subcommand("featmap", "Apply one convolution layer to a PGM image");
  fm_cmd->add_option("--in", fm.in, "Input P2 graymap")->required();
  fm_cmd->add_option("--params", fm.params, "Kernel angles file (4 angles)")->required();
  fm_cmd->add_option("--out", fm.out, "Output P2 graymap")->required();

  BaselineArgs bl;
  auto* bl_cmd = app.add_subcommand("baseline", "Train the classical single-convolution baseline on 2x2 images");
  bl_cmd->add_option("--epochs", bl.config.epochs, "Training epochs")->check(CLI::PositiveNumber);
  bl_cmd->add_option("--batch", bl.config.batch_size, "Batch size")->check(CLI::PositiveNumber);
  bl_cmd->add_option("--lr", bl.config.learning_rate, "Learning rate")->check(CLI::NonNegativeNumber);
  bl_cmd->add_option("--seed", bl.config.seed, "Seed")->envname("QCNN_SEED");
  bl_cmd->add_flag("--fresh", bl.config.fresh_batches, "Draw a new batch every epoch");
  bl_cmd->add_option("--data", bl.data, "Training dataset CSV (2x2 images)");
  bl_cmd->add_option("--dataset-size", bl.dataset_size, "Generated training set size (default: --batch)");
  bl_cmd->add_option("--curve", bl.curve, "Loss curve CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*train_cmd) {
    try {
      apply_config(train_cmd, train_config);
    } catch (const CLI::Error& e) {
      std::fprintf(stderr, "%s: %s\n", train_config.c_str(), e.what());
      return kExitUsage;
    }
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*train_cmd) return run_train(tr);
    if (*eval_cmd) return run_eval(ev);
    if (*fm_cmd) return run_featmap(fm);
    if (*bl_cmd) return run_baseline(bl);
  } catch (const qcnn::ResourceLimitError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitResource;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}

// SPDX-License-Identifier: Apache-2.0
//
// beamloc: attention-aided beamspace localization on synthetic 5G uplink channels
// Copyright (C) 2026 beamloc contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>

#include <CLI11.hpp>

#include "beamloc/harness/experiment.hpp"

namespace {

using beamloc::harness::ExperimentConfig;

ExperimentConfig make_config(const std::string& config_path,
                             std::uint64_t seed, bool seed_set) {
  ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = ExperimentConfig::from_json_file(config_path);
  }
  if (seed_set) cfg.seed = seed;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beamloc: synthetic 5G beamspace localization experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 1;
  std::string out_dir = "run";
  app.add_option("--config", config_path, "JSON experiment configuration")
      ->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--out", out_dir, "Output directory");

  auto* sim = app.add_subcommand("simulate",
                                 "Generate a synthetic channel dataset");

  auto* train = app.add_subcommand("train", "Train the localization network");
  std::string dataset_dir;
  train->add_option("--dataset", dataset_dir, "Dataset directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* eval = app.add_subcommand("evaluate", "Evaluate a checkpoint");
  std::string checkpoint_dir;
  std::string eval_dataset_dir;
  eval->add_option("--checkpoint", checkpoint_dir, "Checkpoint directory")
      ->required()
      ->check(CLI::ExistingDirectory);
  eval->add_option("--dataset", eval_dataset_dir, "Dataset directory")
      ->required()
      ->check(CLI::ExistingDirectory);

  auto* smooth = app.add_subcommand("smooth",
                                    "Kalman-filter an estimates trajectory");
  std::string estimates_csv;
  smooth->add_option("--estimates", estimates_csv, "estimates.csv path")
      ->required()
      ->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Render SVG plots for a run");
  std::string run_dir;
  report->add_option("--run", run_dir, "Run directory with metrics files")
      ->required()
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  try {
    const ExperimentConfig cfg =
        make_config(config_path, seed, seed_opt->count() > 0);
    if (sim->parsed()) {
      const auto result = beamloc::harness::cmd_simulate(cfg, out_dir);
      std::printf("dataset %s: %ld snapshots (%ld valid), scale %.9g\n",
                  result.dataset_dir.string().c_str(), result.total,
                  result.valid, result.normalization_scale);
    } else if (train->parsed()) {
      const auto result = beamloc::harness::cmd_train(dataset_dir, cfg, out_dir);
      std::printf("checkpoint %s: %ld epochs over %ld samples, loss %.6g -> %.6g\n",
                  result.checkpoint_dir.string().c_str(), result.epochs,
                  result.used_samples, result.first_epoch_loss,
                  result.final_epoch_loss);
    } else if (eval->parsed()) {
      const auto result = beamloc::harness::cmd_evaluate(
          checkpoint_dir, eval_dataset_dir, cfg, out_dir);
      std::printf("evaluated %ld samples: rmse %.4f m (baseline %.4f m)",
                  result.samples, result.rmse, result.baseline_rmse);
      if (result.ause) {
        std::printf(", ause x %.4f y %.4f", result.ause->x, result.ause->y);
      }
      std::printf("\n");
    } else if (smooth->parsed()) {
      const auto result =
          beamloc::harness::cmd_smooth(estimates_csv, cfg, out_dir);
      std::printf("smoothed %s: rmse %.4f m -> %.4f m\n",
                  result.smoothed_csv.string().c_str(), result.rmse_raw,
                  result.rmse_filtered);
    } else if (report->parsed()) {
      const auto result = beamloc::harness::cmd_report(run_dir);
      for (const auto& plot : result.plots) {
        std::printf("wrote %s\n", plot.string().c_str());
      }
    }
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return 1;
  }
  return 0;
}

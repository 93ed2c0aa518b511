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

#ifndef BEAMLOC_HARNESS_EXPERIMENT_HPP
#define BEAMLOC_HARNESS_EXPERIMENT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "beamloc/attnet/checkpoint.hpp"
#include "beamloc/attnet/network.hpp"
#include "beamloc/harness/dataset.hpp"
#include "beamloc/losses/losses.hpp"
#include "beamloc/simkit/scenario.hpp"
#include "beamloc/track/kalman.hpp"
#include "beamloc/uq/uq.hpp"

namespace beamloc::harness {

// Everything one experiment needs, JSON-overridable. Learning-rate and SNR
// defaults follow the (scenario, training-density) table; zero/empty means
// "use the default".
struct ExperimentConfig {
  simkit::Scenario scenario = simkit::Scenario::kLos;
  std::uint64_t seed = 1;

  // Simulation.
  int laps_total = 3;
  double speed_mps = 4.1667;  // ~15 km/h
  double dt_s = 0.02;
  int subcarriers = 46;
  int codebook_az = 8;
  int codebook_el = 4;
  int ue_ports = 2;
  double corrupt_fraction = 0.0;
  double snr_db_override = 0.0;  // 0 = scenario default
  double track_width = 0.0;      // 0 = scenario default
  double track_height = 0.0;
  double wobble_amplitude = 0.25;
  double grid_margin_m = 2.0;
  int clean_threshold_override = 0;  // 0 = 3500-equivalent for the shape

  // Training.
  int train_laps = 2;  // 2 = low density, 4 = high density
  attnet::HeadKind head = attnet::HeadKind::kRbc;
  int epochs = 100;
  int batch_size = 64;
  double learning_rate = 0.0;  // 0 = density/scenario default
  std::string optimizer = "adam";
  int threads = 1;
  int bins_x = 100, bins_y = 100;
  int hidden1 = 128, hidden2 = 32;
  bool positional_encoding = true;
  int encoder_blocks = 1;
  bool norm_before_attention = true;
  double rbc_eta = 2.0;
  double rbc_gamma1 = 1.0, rbc_gamma2 = 1.0;

  // Evaluation.
  std::string eval_split = "test";  // test | train | all
  int ause_grid_points = 100;
  double ause_trim_fraction = 0.01;
  std::string ause_variant = "entropy";  // entropy | error

  // Smoothing.
  double kf_eps1 = 0.05;
  double kf_eps2 = 1.2;

  double effective_snr_db() const;
  double effective_learning_rate() const;
  int effective_clean_threshold() const;
  int fingerprint_rows() const { return ue_ports * 2 * codebook_az * codebook_el; }
  simkit::ScenarioConfig scenario_config() const;
  uq::SparsificationOptions sparsification_options() const;

  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::filesystem::path& path);
};

struct SimulateResult {
  std::filesystem::path dataset_dir;
  long total = 0;
  long valid = 0;
  double normalization_scale = 1.0;
};

/// Generates a dataset (trajectory, channels, noise, optional corruption,
/// one-scalar normalization over the snapshots that pass cleaning) and
/// writes it under out_dir. Deterministic per config and seed.
SimulateResult cmd_simulate(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

struct TrainResult {
  std::filesystem::path checkpoint_dir;
  double first_epoch_loss = 0.0;
  double final_epoch_loss = 0.0;
  long epochs = 0;
  long used_samples = 0;
};

/// Cleans, fingerprints, splits by laps (training laps up front, last lap
/// held out) and trains the configured head. Writes checkpoint + per-epoch
/// loss log. On divergence the last finished epoch's checkpoint survives.
TrainResult cmd_train(const std::filesystem::path& dataset_dir,
                      const ExperimentConfig& config,
                      const std::filesystem::path& out_dir);

struct EvaluateResult {
  std::filesystem::path estimates_csv;
  double rmse = 0.0;
  double baseline_rmse = 0.0;  // predict the training mean
  long samples = 0;
  std::optional<uq::AxisAuse> ause;
};

/// Runs the checkpoint over the chosen split and writes estimates.csv,
/// metrics.csv, cdf.csv and (for uncertainty heads) sparsification curves.
EvaluateResult cmd_evaluate(const std::filesystem::path& checkpoint_dir,
                            const std::filesystem::path& dataset_dir,
                            const ExperimentConfig& config,
                            const std::filesystem::path& out_dir);

struct SmoothResult {
  std::filesystem::path smoothed_csv;
  double rmse_raw = 0.0;
  double rmse_filtered = 0.0;
};

/// Kalman-filters an estimates.csv trajectory (uniform timestamps required)
/// and writes smoothed.csv plus a before/after report.
SmoothResult cmd_smooth(const std::filesystem::path& estimates_csv,
                        const ExperimentConfig& config,
                        const std::filesystem::path& out_dir);

struct ReportResult {
  std::vector<std::filesystem::path> plots;
};

/// Renders SVG plots (error CDF, sparsification curves, trajectory overlay)
/// from the files present in a run directory.
ReportResult cmd_report(const std::filesystem::path& run_dir);

// In-memory pieces shared by the commands and the acceptance suite.

struct LearningSet {
  DatasetManifest manifest;
  std::vector<int> laps;
  std::vector<double> times;
  std::vector<Eigen::Vector2d> truths;
  std::vector<tensor::Mat> fingerprints;
  long rejected = 0;
};

/// Cleans and fingerprints a stored dataset.
LearningSet load_learning_set(const std::filesystem::path& dataset_dir,
                              const ExperimentConfig& config);

losses::BinGrid grid_for(const DatasetManifest& manifest,
                         const ExperimentConfig& config);

struct SampleEval {
  Eigen::Vector2d estimate;
  losses::GaussianPdf gauss;   // NLL head
  losses::BinnedPdf binned;    // RbC head
};

/// Forward pass + decode for one fingerprint.
SampleEval evaluate_sample(const attnet::AttentionNet& net,
                           const tensor::Mat& fingerprint,
                           const losses::BinGrid* grid);

}  // namespace beamloc::harness

#endif  // BEAMLOC_HARNESS_EXPERIMENT_HPP

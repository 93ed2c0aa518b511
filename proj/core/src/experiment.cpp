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

#include "beamloc/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "beamloc/fingerprint/fingerprint.hpp"
#include "beamloc/harness/metrics.hpp"
#include "beamloc/harness/svg.hpp"
#include "beamloc/simkit/channel.hpp"
#include "beamloc/tensor/optimizer.hpp"

namespace beamloc::harness {

namespace {

using nlohmann::json;

constexpr double kCleanFraction = 3500.0 / 5888.0;

std::vector<std::string> str_row(std::initializer_list<double> values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_double(v));
  return row;
}

}  // namespace

double ExperimentConfig::effective_snr_db() const {
  if (std::isfinite(snr_db_override) && snr_db_override != 0.0) {
    return snr_db_override;
  }
  return simkit::default_scenario(scenario).snr_db;
}

double ExperimentConfig::effective_learning_rate() const {
  if (learning_rate > 0.0) return learning_rate;
  if (train_laps >= 3) return 6e-4;  // high training density
  switch (scenario) {
    case simkit::Scenario::kLos:
      return 2e-4;
    case simkit::Scenario::kNlos:
      return 1e-4;
    case simkit::Scenario::kMixed:
      return 2e-4;
  }
  return 2e-4;
}

int ExperimentConfig::effective_clean_threshold() const {
  if (clean_threshold_override > 0) return clean_threshold_override;
  const int rows = fingerprint_rows();
  if (rows == 128 && subcarriers == 46) {
    return fingerprint::kDefaultCleanThreshold;
  }
  return static_cast<int>(std::lround(kCleanFraction * rows * subcarriers));
}

simkit::ScenarioConfig ExperimentConfig::scenario_config() const {
  simkit::ScenarioConfig cfg = simkit::default_scenario(scenario);
  cfg.snr_db = effective_snr_db();
  cfg.speed_mps = speed_mps;
  cfg.dt_s = dt_s;
  cfg.ue_ports = ue_ports;
  if (track_width > 0.0) cfg.track.width = track_width;
  if (track_height > 0.0) cfg.track.height = track_height;
  cfg.track.wobble_amplitude = wobble_amplitude;
  return cfg;
}

uq::SparsificationOptions ExperimentConfig::sparsification_options() const {
  uq::SparsificationOptions opts;
  opts.grid_points = ause_grid_points;
  opts.trim_fraction = ause_trim_fraction;
  if (ause_variant == "entropy") {
    opts.variant = uq::SparsificationVariant::kEntropyCurve;
  } else if (ause_variant == "error") {
    opts.variant = uq::SparsificationVariant::kErrorCurve;
  } else {
    throw std::invalid_argument("config: ause_variant must be entropy|error");
  }
  return opts;
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  ExperimentConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "scenario") {
      cfg.scenario = simkit::scenario_from_string(value.get<std::string>());
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "laps_total") {
      cfg.laps_total = value.get<int>();
    } else if (key == "speed_mps") {
      cfg.speed_mps = value.get<double>();
    } else if (key == "dt_s") {
      cfg.dt_s = value.get<double>();
    } else if (key == "subcarriers") {
      cfg.subcarriers = value.get<int>();
    } else if (key == "codebook_az") {
      cfg.codebook_az = value.get<int>();
    } else if (key == "codebook_el") {
      cfg.codebook_el = value.get<int>();
    } else if (key == "ue_ports") {
      cfg.ue_ports = value.get<int>();
    } else if (key == "corrupt_fraction") {
      cfg.corrupt_fraction = value.get<double>();
    } else if (key == "snr_db") {
      cfg.snr_db_override = value.get<double>();
    } else if (key == "track_width") {
      cfg.track_width = value.get<double>();
    } else if (key == "track_height") {
      cfg.track_height = value.get<double>();
    } else if (key == "wobble_amplitude") {
      cfg.wobble_amplitude = value.get<double>();
    } else if (key == "grid_margin_m") {
      cfg.grid_margin_m = value.get<double>();
    } else if (key == "clean_threshold") {
      cfg.clean_threshold_override = value.get<int>();
    } else if (key == "train_laps") {
      cfg.train_laps = value.get<int>();
    } else if (key == "head") {
      cfg.head = attnet::head_from_string(value.get<std::string>());
    } else if (key == "epochs") {
      cfg.epochs = value.get<int>();
    } else if (key == "batch_size") {
      cfg.batch_size = value.get<int>();
    } else if (key == "learning_rate") {
      cfg.learning_rate = value.get<double>();
    } else if (key == "optimizer") {
      cfg.optimizer = value.get<std::string>();
    } else if (key == "threads") {
      cfg.threads = value.get<int>();
    } else if (key == "bins_x") {
      cfg.bins_x = value.get<int>();
    } else if (key == "bins_y") {
      cfg.bins_y = value.get<int>();
    } else if (key == "hidden1") {
      cfg.hidden1 = value.get<int>();
    } else if (key == "hidden2") {
      cfg.hidden2 = value.get<int>();
    } else if (key == "positional_encoding") {
      cfg.positional_encoding = value.get<bool>();
    } else if (key == "encoder_blocks") {
      cfg.encoder_blocks = value.get<int>();
    } else if (key == "norm_before_attention") {
      cfg.norm_before_attention = value.get<bool>();
    } else if (key == "rbc_eta") {
      cfg.rbc_eta = value.get<double>();
    } else if (key == "rbc_gamma1") {
      cfg.rbc_gamma1 = value.get<double>();
    } else if (key == "rbc_gamma2") {
      cfg.rbc_gamma2 = value.get<double>();
    } else if (key == "eval_split") {
      cfg.eval_split = value.get<std::string>();
    } else if (key == "ause_grid_points") {
      cfg.ause_grid_points = value.get<int>();
    } else if (key == "ause_trim_fraction") {
      cfg.ause_trim_fraction = value.get<double>();
    } else if (key == "ause_variant") {
      cfg.ause_variant = value.get<std::string>();
    } else if (key == "kf_eps1") {
      cfg.kf_eps1 = value.get<double>();
    } else if (key == "kf_eps2") {
      cfg.kf_eps2 = value.get<double>();
    } else {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return from_json_text(text);
}

// ---------------------------------------------------------------- simulate

SimulateResult cmd_simulate(const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
  const simkit::ScenarioConfig scen_cfg = config.scenario_config();
  const simkit::ScenarioModel scenario(scen_cfg, config.seed);
  const simkit::ArrayCodebook codebook(config.codebook_az, config.codebook_el);
  const simkit::GroundTruthTrack track =
      gen_trajectory(scen_cfg.track, config.laps_total, config.speed_mps,
                     config.dt_s, config.seed);
  const std::vector<double> f_grid =
      simkit::subcarrier_grid(3.85e9, 100e6, config.subcarriers);
  const int threshold = config.effective_clean_threshold();

  const std::size_t total = track.positions.size();
  std::vector<simkit::ChannelSnapshot> snapshots;
  snapshots.reserve(total);
  for (std::size_t i = 0; i < total; ++i) {
    const auto paths = scenario.paths_for(track.positions[i]);
    simkit::ChannelSnapshot snap =
        simkit::synth_snapshot(codebook, paths, f_grid, config.ue_ports);
    Rng noise = Rng::fork(config.seed, 0xA000 + i);
    simkit::add_awgn(snap, scen_cfg.snr_db, noise);
    snapshots.push_back(std::move(snap));
  }

  // Deliberate corruption on a seeded sample of records.
  std::vector<std::uint32_t> flags(total, 0);
  const std::size_t corrupt_count = static_cast<std::size_t>(
      std::llround(config.corrupt_fraction * static_cast<double>(total)));
  if (corrupt_count > 0) {
    std::vector<std::size_t> order(total);
    for (std::size_t i = 0; i < total; ++i) order[i] = i;
    Rng pick = Rng::fork(config.seed, 0xC0FF);
    for (std::size_t i = total - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(
          pick.uniform_int(0, static_cast<std::int64_t>(i)));
      std::swap(order[i], order[j]);
    }
    for (std::size_t k = 0; k < corrupt_count && k < total; ++k) {
      const std::size_t idx = order[k];
      const simkit::CorruptMode mode = (k % 2 == 0)
                                           ? simkit::CorruptMode::kSparse
                                           : simkit::CorruptMode::kStale;
      snapshots[idx] = simkit::corrupt_snapshot(
          snapshots[idx], mode, config.seed + idx, threshold);
      flags[idx] = mode == simkit::CorruptMode::kSparse
                       ? static_cast<std::uint32_t>(RecordFlag::kCorruptSparse)
                       : static_cast<std::uint32_t>(RecordFlag::kCorruptStale);
    }
  }

  // One normalization scalar from the snapshots that survive cleaning.
  double norm_total = 0.0;
  double norm_entries = 0.0;
  long valid = 0;
  for (const simkit::ChannelSnapshot& s : snapshots) {
    if (fingerprint::validate(s, threshold).verdict ==
        fingerprint::Verdict::kValid) {
      norm_total += s.ctf.squaredNorm();
      norm_entries += static_cast<double>(s.ctf.size());
      ++valid;
    }
  }
  if (norm_total <= 0.0) {
    throw std::runtime_error("cmd_simulate: no valid snapshots to normalize");
  }
  const double scale = std::sqrt(norm_entries / norm_total);
  for (simkit::ChannelSnapshot& s : snapshots) s.ctf *= scale;

  Dataset ds;
  DatasetManifest& m = ds.manifest;
  m.scenario = to_string(config.scenario);
  m.payload = RecordPayload::kComplex64Ctf;
  m.count = static_cast<long>(total);
  m.rows = static_cast<int>(snapshots.front().ctf.rows());
  m.cols = config.subcarriers;
  m.normalization_scale = scale;
  m.dt_s = config.dt_s;
  m.speed_mps = config.speed_mps;
  m.carrier_hz = 3.85e9;
  m.bandwidth_hz = 100e6;
  m.seed = config.seed;
  m.corrupt_fraction = config.corrupt_fraction;
  m.snr_db = scen_cfg.snr_db;
  m.lap_count = track.lap_count;
  m.points_per_lap = track.points_per_lap;
  m.clean_threshold = threshold;
  m.ue_ports = config.ue_ports;
  m.codebook_az = config.codebook_az;
  m.codebook_el = config.codebook_el;
  Eigen::Vector2d lo, hi;
  scenario.extents(config.grid_margin_m, lo, hi);
  m.extent_lo_x = lo.x();
  m.extent_hi_x = hi.x();
  m.extent_lo_y = lo.y();
  m.extent_hi_y = hi.y();

  ds.records.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    DatasetRecord& r = ds.records[i];
    r.x = track.positions[i].x();
    r.y = track.positions[i].y();
    r.t = track.timestamps[i];
    r.lap = static_cast<std::uint32_t>(static_cast<int>(i) /
                                       track.points_per_lap);
    r.flags = flags[i];
    r.ctf = std::move(snapshots[i].ctf);
  }
  write_dataset(out_dir, ds);

  SimulateResult result;
  result.dataset_dir = out_dir;
  result.total = static_cast<long>(total);
  result.valid = valid;
  result.normalization_scale = scale;
  return result;
}

// ------------------------------------------------------------------ train

LearningSet load_learning_set(const std::filesystem::path& dataset_dir,
                              const ExperimentConfig& /*config*/) {
  const Dataset ds = read_dataset(dataset_dir);
  LearningSet set;
  set.manifest = ds.manifest;
  for (const DatasetRecord& r : ds.records) {
    if (ds.manifest.payload == RecordPayload::kComplex64Ctf) {
      simkit::ChannelSnapshot snap;
      snap.ctf = r.ctf;
      snap.carrier_hz = ds.manifest.carrier_hz;
      snap.bandwidth_hz = ds.manifest.bandwidth_hz;
      const auto report =
          fingerprint::validate(snap, ds.manifest.clean_threshold);
      if (report.verdict != fingerprint::Verdict::kValid) {
        ++set.rejected;
        continue;
      }
      set.fingerprints.push_back(
          fingerprint::to_fingerprint(snap, ds.manifest.clean_threshold).amp);
    } else {
      set.fingerprints.push_back(r.amp);
    }
    set.laps.push_back(static_cast<int>(r.lap));
    set.times.push_back(r.t);
    set.truths.emplace_back(r.x, r.y);
  }
  if (set.fingerprints.empty()) {
    throw std::runtime_error("dataset contains no valid snapshots");
  }
  return set;
}

losses::BinGrid grid_for(const DatasetManifest& manifest,
                         const ExperimentConfig& config) {
  return losses::make_grid(manifest.extent_lo_x, manifest.extent_hi_x,
                           manifest.extent_lo_y, manifest.extent_hi_y,
                           config.bins_x, config.bins_y);
}

namespace {

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

SplitIndices split_by_laps(const LearningSet& set, int train_laps) {
  const int lap_count = set.manifest.lap_count;
  if (train_laps < 1 || train_laps >= lap_count) {
    throw std::invalid_argument(
        "train_laps must be in [1, lap_count-1]; the last lap is held out");
  }
  SplitIndices split;
  const int test_lap = lap_count - 1;
  for (std::size_t i = 0; i < set.laps.size(); ++i) {
    if (set.laps[i] < train_laps) {
      split.train.push_back(i);
    } else if (set.laps[i] == test_lap) {
      split.test.push_back(i);
    }
  }
  if (split.train.empty() || split.test.empty()) {
    throw std::runtime_error("lap split left an empty train or test set");
  }
  // Lap ids are disjoint by construction; keep the guard cheap and explicit.
  for (std::size_t i : split.train) {
    if (set.laps[i] == test_lap) {
      throw std::logic_error("train/test laps overlap");
    }
  }
  return split;
}

attnet::NetworkConfig network_config_for(const DatasetManifest& manifest,
                                         const ExperimentConfig& config) {
  attnet::NetworkConfig net;
  net.rows = manifest.rows;
  net.cols = manifest.cols;
  net.heads = 2;
  net.head = config.head;
  net.l_x = config.bins_x;
  net.l_y = config.bins_y;
  net.hidden1 = config.hidden1;
  net.hidden2 = config.hidden2;
  net.positional_encoding = config.positional_encoding;
  net.encoder_blocks = config.encoder_blocks;
  net.norm_before_attention = config.norm_before_attention;
  net.init_seed = mix64(config.seed ^ 0xBEA71E7);
  return net;
}

// One sample's loss graph; returns the per-sample loss value.
double sample_pass(const attnet::AttentionNet& net, const losses::BinGrid& grid,
                   const ExperimentConfig& config, const tensor::Mat& fp,
                   const Eigen::Vector2d& truth, double grad_seed,
                   std::vector<tensor::Mat>* sinks) {
  tensor::Tape tape;
  const attnet::HeadOutput out = net.forward(tape, fp, sinks);
  tensor::NodeRef loss = nullptr;
  switch (config.head) {
    case attnet::HeadKind::kMse:
      loss = losses::mse_loss_node(tape, out.mean, truth);
      break;
    case attnet::HeadKind::kNll:
      loss = losses::nll_loss_node(tape, out.mean, out.var, truth);
      break;
    case attnet::HeadKind::kRbc: {
      losses::RbcPenalty penalty{config.rbc_eta, config.rbc_gamma1,
                                 config.rbc_gamma2};
      loss = losses::rbc_loss_node(tape, out.q_x, out.q_y, out.shift_x,
                                   out.shift_y, grid, truth, penalty);
      break;
    }
  }
  if (sinks) tape.backward(loss, grad_seed);
  return loss->value(0, 0);
}

}  // namespace

SampleEval evaluate_sample(const attnet::AttentionNet& net,
                           const tensor::Mat& fingerprint,
                           const losses::BinGrid* grid) {
  tensor::Tape tape;
  const attnet::HeadOutput out = net.forward(tape, fingerprint, nullptr);
  SampleEval eval;
  switch (net.config().head) {
    case attnet::HeadKind::kMse:
      eval.estimate = Eigen::Vector2d(out.mean->val()(0, 0),
                                      out.mean->val()(1, 0));
      break;
    case attnet::HeadKind::kNll:
      eval.gauss.mean = {out.mean->val()(0, 0), out.mean->val()(1, 0)};
      eval.gauss.var = {out.var->val()(0, 0), out.var->val()(1, 0)};
      eval.estimate = eval.gauss.mean;
      break;
    case attnet::HeadKind::kRbc: {
      if (grid == nullptr) {
        throw std::invalid_argument("evaluate_sample: RbC needs a bin grid");
      }
      eval.binned.q_x = out.q_x->val().col(0);
      eval.binned.q_y = out.q_y->val().col(0);
      eval.binned.shift_x = out.shift_x->val()(0, 0);
      eval.binned.shift_y = out.shift_y->val()(0, 0);
      eval.estimate = losses::rbc_decode(eval.binned, *grid);
      break;
    }
  }
  return eval;
}

TrainResult cmd_train(const std::filesystem::path& dataset_dir,
                      const ExperimentConfig& config,
                      const std::filesystem::path& out_dir) {
  if (config.epochs < 1 || config.batch_size < 1 || config.threads < 1) {
    throw std::invalid_argument("cmd_train: bad epochs/batch/threads");
  }
  const LearningSet set = load_learning_set(dataset_dir, config);
  const SplitIndices split = split_by_laps(set, config.train_laps);
  const losses::BinGrid grid = grid_for(set.manifest, config);
  attnet::AttentionNet net(network_config_for(set.manifest, config));

  const double lr = config.effective_learning_rate();
  const bool use_adam = config.optimizer == "adam";
  if (!use_adam && config.optimizer != "sgd") {
    throw std::invalid_argument("cmd_train: optimizer must be adam|sgd");
  }
  tensor::Adam adam(net.params());
  tensor::Sgd sgd;

  Eigen::Vector2d train_mean = Eigen::Vector2d::Zero();
  for (std::size_t i : split.train) train_mean += set.truths[i];
  train_mean /= static_cast<double>(split.train.size());

  attnet::CheckpointMeta meta;
  meta.seed = config.seed;
  meta.normalization_scale = set.manifest.normalization_scale;
  meta.train_mean = train_mean;
  meta.grid = grid;

  std::filesystem::create_directories(out_dir);
  std::vector<std::vector<std::string>> log_rows;

  const int thread_count =
      std::min<int>(config.threads, static_cast<int>(config.batch_size));
  std::vector<std::vector<tensor::Mat>> sink_sets;
  for (int t = 0; t < thread_count; ++t) sink_sets.push_back(net.make_sinks());

  // Last finished epoch's weights survive a divergence abort.
  std::vector<tensor::Mat> last_good;
  long last_good_epoch = 0;
  auto snapshot_params = [&] {
    last_good.clear();
    for (const tensor::Parameter& p : net.params()) last_good.push_back(p.value);
  };

  TrainResult result;
  result.epochs = config.epochs;
  result.used_samples = static_cast<long>(split.train.size());

  std::vector<std::size_t> order = split.train;
  try {
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
      const auto epoch_start = std::chrono::steady_clock::now();
      Rng shuffle_rng = Rng::fork(config.seed, 0xE000 + static_cast<std::uint64_t>(epoch));
      for (std::size_t i = order.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(
            shuffle_rng.uniform_int(0, static_cast<std::int64_t>(i)));
        std::swap(order[i], order[j]);
      }

      double epoch_loss = 0.0;
      for (std::size_t at = 0; at < order.size(); at += config.batch_size) {
        const std::size_t batch_n =
            std::min<std::size_t>(config.batch_size, order.size() - at);
        const double grad_seed = 1.0 / static_cast<double>(batch_n);
        net.params().zero_grads();
        std::vector<double> batch_losses(batch_n, 0.0);

        auto worker = [&](int tid) {
          for (std::size_t k = static_cast<std::size_t>(tid); k < batch_n;
               k += static_cast<std::size_t>(thread_count)) {
            const std::size_t idx = order[at + k];
            batch_losses[k] = sample_pass(net, grid, config,
                                          set.fingerprints[idx],
                                          set.truths[idx], grad_seed,
                                          &sink_sets[static_cast<std::size_t>(tid)]);
          }
        };
        if (thread_count == 1) {
          worker(0);
        } else {
          std::vector<std::exception_ptr> errors(
              static_cast<std::size_t>(thread_count));
          std::vector<std::thread> pool;
          pool.reserve(static_cast<std::size_t>(thread_count));
          for (int t = 0; t < thread_count; ++t) {
            pool.emplace_back([&, t] {
              try {
                worker(t);
              } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
              }
            });
          }
          for (std::thread& th : pool) th.join();
          for (const std::exception_ptr& e : errors) {
            if (e) std::rethrow_exception(e);
          }
        }

        // Deterministic reduction: thread order, then parameter order.
        for (int t = 0; t < thread_count; ++t) {
          for (std::size_t p = 0; p < net.params().size(); ++p) {
            net.params()[p].grad += sink_sets[static_cast<std::size_t>(t)][p];
            sink_sets[static_cast<std::size_t>(t)][p].setZero();
          }
        }
        if (use_adam) {
          adam.step(net.params(), lr);
        } else {
          sgd.step(net.params(), lr);
        }
        for (double l : batch_losses) epoch_loss += l;
      }
      epoch_loss /= static_cast<double>(order.size());
      if (epoch == 0) result.first_epoch_loss = epoch_loss;
      result.final_epoch_loss = epoch_loss;

      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        epoch_start)
              .count();
      log_rows.push_back({std::to_string(epoch + 1),
                          format_double(epoch_loss), format_double(lr),
                          format_double(seconds)});
      snapshot_params();
      last_good_epoch = epoch + 1;
    }
  } catch (const tensor::DivergenceError& err) {
    if (!last_good.empty()) {
      for (std::size_t p = 0; p < net.params().size(); ++p) {
        net.params()[p].value = last_good[p];
      }
      meta.epoch = last_good_epoch;
      save_checkpoint(out_dir, net, meta);
      write_csv(out_dir / "train_log.csv", {"epoch", "loss", "lr", "seconds"},
                log_rows);
    }
    throw;
  }

  meta.epoch = config.epochs;
  save_checkpoint(out_dir, net, meta);
  write_csv(out_dir / "train_log.csv", {"epoch", "loss", "lr", "seconds"},
            log_rows);
  result.checkpoint_dir = out_dir;
  return result;
}

// --------------------------------------------------------------- evaluate

EvaluateResult cmd_evaluate(const std::filesystem::path& checkpoint_dir,
                            const std::filesystem::path& dataset_dir,
                            const ExperimentConfig& config,
                            const std::filesystem::path& out_dir) {
  attnet::LoadedCheckpoint loaded = attnet::load_checkpoint(checkpoint_dir);
  const attnet::AttentionNet& net = *loaded.net;
  const LearningSet set = load_learning_set(dataset_dir, config);
  if (net.config().rows != set.manifest.rows ||
      net.config().cols != set.manifest.cols) {
    throw std::invalid_argument(
        "cmd_evaluate: checkpoint and dataset shapes disagree");
  }

  std::vector<std::size_t> picked;
  const int test_lap = set.manifest.lap_count - 1;
  for (std::size_t i = 0; i < set.laps.size(); ++i) {
    const bool in_test = set.laps[i] == test_lap;
    if (config.eval_split == "test" ? in_test
        : config.eval_split == "train" ? (set.laps[i] < config.train_laps)
        : config.eval_split == "all"   ? true
                                       : false) {
      picked.push_back(i);
    }
  }
  if (picked.empty()) {
    if (config.eval_split != "test" && config.eval_split != "train" &&
        config.eval_split != "all") {
      throw std::invalid_argument("cmd_evaluate: eval_split must be "
                                  "test|train|all");
    }
    throw std::runtime_error("cmd_evaluate: empty evaluation split");
  }

  const losses::BinGrid grid =
      loaded.meta.grid ? *loaded.meta.grid : grid_for(set.manifest, config);
  const attnet::HeadKind head = net.config().head;
  const Eigen::VectorXd endpoints_x = grid.endpoints_x();
  const Eigen::VectorXd endpoints_y = grid.endpoints_y();

  std::vector<Eigen::Vector2d> estimates, truths;
  std::vector<double> unc_x, unc_y;
  estimates.reserve(picked.size());
  truths.reserve(picked.size());
  for (std::size_t i : picked) {
    const SampleEval eval = evaluate_sample(net, set.fingerprints[i], &grid);
    estimates.push_back(eval.estimate);
    truths.push_back(set.truths[i]);
    if (head == attnet::HeadKind::kNll) {
      unc_x.push_back(uq::entropy(uq::discretize_gaussian(
          eval.gauss.mean.x(), eval.gauss.var.x(), endpoints_x)));
      unc_y.push_back(uq::entropy(uq::discretize_gaussian(
          eval.gauss.mean.y(), eval.gauss.var.y(), endpoints_y)));
    } else if (head == attnet::HeadKind::kRbc) {
      unc_x.push_back(uq::entropy(eval.binned.q_x));
      unc_y.push_back(uq::entropy(eval.binned.q_y));
    } else {
      unc_x.push_back(0.0);
      unc_y.push_back(0.0);
    }
  }

  std::filesystem::create_directories(out_dir);
  std::vector<std::vector<std::string>> est_rows;
  est_rows.reserve(picked.size());
  for (std::size_t k = 0; k < picked.size(); ++k) {
    const std::size_t i = picked[k];
    est_rows.push_back({std::to_string(k), format_double(set.times[i]),
                        std::to_string(set.laps[i]),
                        format_double(truths[k].x()),
                        format_double(truths[k].y()),
                        format_double(estimates[k].x()),
                        format_double(estimates[k].y()),
                        format_double(unc_x[k]), format_double(unc_y[k])});
  }
  const std::filesystem::path est_path = out_dir / "estimates.csv";
  write_csv(est_path,
            {"index", "t", "lap", "x_true", "y_true", "x_est", "y_est",
             "unc_x", "unc_y"},
            est_rows);

  EvaluateResult result;
  result.estimates_csv = est_path;
  result.samples = static_cast<long>(picked.size());
  result.rmse = rmse(estimates, truths);
  if (loaded.meta.train_mean) {
    std::vector<Eigen::Vector2d> mean_est(truths.size(),
                                          *loaded.meta.train_mean);
    result.baseline_rmse = rmse(mean_est, truths);
  }

  std::vector<double> errors;
  errors.reserve(truths.size());
  for (std::size_t k = 0; k < truths.size(); ++k) {
    errors.push_back((estimates[k] - truths[k]).norm());
  }
  std::vector<std::vector<std::string>> cdf_rows;
  for (const auto& [e, p] : error_cdf(errors)) {
    cdf_rows.push_back({format_double(e), format_double(p)});
  }
  write_csv(out_dir / "cdf.csv", {"error_m", "cum_prob"}, cdf_rows);

  std::vector<std::vector<std::string>> metric_rows;
  metric_rows.push_back({"head", to_string(head)});
  metric_rows.push_back({"samples", std::to_string(result.samples)});
  metric_rows.push_back({"rmse_m", format_double(result.rmse)});
  metric_rows.push_back(
      {"baseline_rmse_m", format_double(result.baseline_rmse)});

  if (head != attnet::HeadKind::kMse) {
    const auto opts = config.sparsification_options();
    std::vector<double> err_x, err_y;
    for (std::size_t k = 0; k < truths.size(); ++k) {
      err_x.push_back(std::abs(estimates[k].x() - truths[k].x()));
      err_y.push_back(std::abs(estimates[k].y() - truths[k].y()));
    }
    const auto spar_x = uq::sparsification(unc_x, err_x, opts);
    const auto spar_y = uq::sparsification(unc_y, err_y, opts);
    result.ause = uq::AxisAuse{spar_x.ause, spar_y.ause};

    auto write_curve = [&](const uq::SparsificationResult& r,
                           const std::string& axis) {
      std::vector<std::vector<std::string>> rows;
      for (Eigen::Index j = 0; j < r.fractions.size(); ++j) {
        rows.push_back(str_row({r.fractions(j), r.s_values(j), r.g_values(j)}));
      }
      write_csv(out_dir / ("sparsification_" + to_string(head) + "_" + axis +
                           ".csv"),
                {"phi", "s", "g"}, rows);
    };
    write_curve(spar_x, "x");
    write_curve(spar_y, "y");
    metric_rows.push_back({"ause_x", format_double(spar_x.ause)});
    metric_rows.push_back({"ause_y", format_double(spar_y.ause)});
    metric_rows.push_back({"ause_variant", config.ause_variant});
    metric_rows.push_back(
        {"ause_trim_fraction", format_double(config.ause_trim_fraction)});
  }
  write_csv(out_dir / "metrics.csv", {"metric", "value"}, metric_rows);
  return result;
}

// ----------------------------------------------------------------- smooth

SmoothResult cmd_smooth(const std::filesystem::path& estimates_csv,
                        const ExperimentConfig& config,
                        const std::filesystem::path& out_dir) {
  const CsvTable table = read_csv(estimates_csv);
  if (table.rows.size() < 2) {
    throw std::invalid_argument("cmd_smooth: need at least 2 estimates");
  }
  std::vector<double> times;
  std::vector<Eigen::Vector2d> raw, truths;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    times.push_back(table.number(r, "t"));
    raw.emplace_back(table.number(r, "x_est"), table.number(r, "y_est"));
    truths.emplace_back(table.number(r, "x_true"), table.number(r, "y_true"));
  }
  const double dt = times[1] - times[0];
  if (dt <= 0.0) throw std::invalid_argument("cmd_smooth: non-increasing t");
  for (std::size_t i = 2; i < times.size(); ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt) {
      throw std::invalid_argument(
          "cmd_smooth: ragged timestamps; the filter needs uniform spacing");
    }
  }

  track::KfConfig kf;
  kf.dt = dt;
  kf.eps1 = config.kf_eps1;
  kf.eps2 = config.kf_eps2;
  const std::vector<Eigen::Vector2d> filtered = track::smooth(raw, kf);

  std::filesystem::create_directories(out_dir);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    rows.push_back({std::to_string(i), format_double(times[i]),
                    format_double(truths[i].x()), format_double(truths[i].y()),
                    format_double(raw[i].x()), format_double(raw[i].y()),
                    format_double(filtered[i].x()),
                    format_double(filtered[i].y())});
  }
  const std::filesystem::path smoothed_path = out_dir / "smoothed.csv";
  write_csv(smoothed_path,
            {"index", "t", "x_true", "y_true", "x_raw", "y_raw", "x_filtered",
             "y_filtered"},
            rows);

  SmoothResult result;
  result.smoothed_csv = smoothed_path;
  result.rmse_raw = rmse(raw, truths);
  result.rmse_filtered = rmse(filtered, truths);
  write_csv(out_dir / "smooth_report.csv",
            {"rmse_raw_m", "rmse_filtered_m", "eps1", "eps2"},
            {str_row({result.rmse_raw, result.rmse_filtered, config.kf_eps1,
                      config.kf_eps2})});
  return result;
}

// ----------------------------------------------------------------- report

ReportResult cmd_report(const std::filesystem::path& run_dir) {
  const std::filesystem::path est_path = run_dir / "estimates.csv";
  const std::filesystem::path cdf_path = run_dir / "cdf.csv";
  std::vector<std::string> missing;
  if (!std::filesystem::exists(est_path)) missing.push_back(est_path.string());
  if (!std::filesystem::exists(cdf_path)) missing.push_back(cdf_path.string());
  if (!missing.empty()) {
    std::string msg = "cmd_report: missing inputs:";
    for (const std::string& m : missing) msg += " " + m;
    throw std::runtime_error(msg);
  }
  const CsvTable est = read_csv(est_path);
  const CsvTable cdf = read_csv(cdf_path);
  if (est.rows.empty() || cdf.rows.empty()) {
    throw std::runtime_error("cmd_report: empty metrics, nothing to plot");
  }

  ReportResult result;
  {
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < cdf.rows.size(); ++r) {
      xs.push_back(cdf.number(r, "error_m"));
      ys.push_back(cdf.number(r, "cum_prob"));
    }
    SvgPlot plot("Positioning error CDF", "error [m]", "P(error <= x)");
    plot.add_series("error CDF", xs, ys, "#1f6fb2");
    const std::filesystem::path out = run_dir / "cdf.svg";
    plot.write(out);
    result.plots.push_back(out);
  }

  for (const std::string axis : {"x", "y"}) {
    std::vector<std::filesystem::path> curves;
    for (const auto& entry : std::filesystem::directory_iterator(run_dir)) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("sparsification_", 0) == 0 &&
          name.find("_" + axis + ".csv") != std::string::npos) {
        curves.push_back(entry.path());
      }
    }
    if (curves.empty()) continue;
    std::sort(curves.begin(), curves.end());
    SvgPlot plot("Sparsification curves (" + axis + ")", "removed fraction",
                 "mean retained value [m]");
    const std::vector<std::string> colors = {"#1f6fb2", "#d1495b", "#2e8b57",
                                             "#a06cd5"};
    std::size_t color_at = 0;
    for (const auto& path : curves) {
      const CsvTable curve = read_csv(path);
      std::vector<double> phi, s, g;
      for (std::size_t r = 0; r < curve.rows.size(); ++r) {
        phi.push_back(curve.number(r, "phi"));
        s.push_back(curve.number(r, "s"));
        g.push_back(curve.number(r, "g"));
      }
      std::string label = path.filename().string();
      label = label.substr(std::string("sparsification_").size());
      label = label.substr(0, label.size() - std::string("_.csv").size() - 1);
      plot.add_series(label + " s", phi, s, colors[color_at % colors.size()]);
      plot.add_series(label + " g", phi, g,
                      colors[(color_at + 1) % colors.size()]);
      color_at += 2;
    }
    const std::filesystem::path out =
        run_dir / ("sparsification_" + axis + ".svg");
    plot.write(out);
    result.plots.push_back(out);
  }

  {
    SvgPlot plot("Trajectory", "x [m]", "y [m]");
    plot.set_equal_aspect(true);
    std::vector<double> tx, ty, rx, ry;
    for (std::size_t r = 0; r < est.rows.size(); ++r) {
      tx.push_back(est.number(r, "x_true"));
      ty.push_back(est.number(r, "y_true"));
      rx.push_back(est.number(r, "x_est"));
      ry.push_back(est.number(r, "y_est"));
    }
    plot.add_series("ground truth", tx, ty, "#2e8b57");
    plot.add_series("raw estimate", rx, ry, "#d1495b");
    const std::filesystem::path smoothed_path = run_dir / "smoothed.csv";
    if (std::filesystem::exists(smoothed_path)) {
      const CsvTable sm = read_csv(smoothed_path);
      std::vector<double> fx, fy;
      for (std::size_t r = 0; r < sm.rows.size(); ++r) {
        fx.push_back(sm.number(r, "x_filtered"));
        fy.push_back(sm.number(r, "y_filtered"));
      }
      plot.add_series("kalman filtered", fx, fy, "#1f6fb2");
    }
    const std::filesystem::path out = run_dir / "trajectory.svg";
    plot.write(out);
    result.plots.push_back(out);
  }
  return result;
}

}  // namespace beamloc::harness

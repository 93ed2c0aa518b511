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

#include "beamloc/attnet/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace beamloc::attnet {

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("short write to " + path.string());
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  in >> j;
  return j;
}

}  // namespace

void save_checkpoint(const std::filesystem::path& dir, const AttentionNet& net,
                     const CheckpointMeta& meta) {
  std::filesystem::create_directories(dir);
  const NetworkConfig& cfg = net.config();

  json manifest;
  manifest["format_version"] = 1;
  manifest["head"] = to_string(cfg.head);
  manifest["epoch"] = meta.epoch;
  manifest["seed"] = meta.seed;
  manifest["normalization_scale"] = meta.normalization_scale;
  manifest["network"] = {
      {"rows", cfg.rows},
      {"cols", cfg.cols},
      {"heads", cfg.heads},
      {"l_x", cfg.l_x},
      {"l_y", cfg.l_y},
      {"hidden1", cfg.hidden1},
      {"hidden2", cfg.hidden2},
      {"positional_encoding", cfg.positional_encoding},
      {"encoder_blocks", cfg.encoder_blocks},
      {"norm_before_attention", cfg.norm_before_attention},
      {"init_seed", cfg.init_seed},
  };
  json shapes = json::array();
  for (const tensor::Parameter& p : net.params()) {
    shapes.push_back({{"name", p.name},
                      {"rows", p.value.rows()},
                      {"cols", p.value.cols()}});
  }
  manifest["parameters"] = shapes;
  if (meta.train_mean) {
    manifest["train_mean"] = {meta.train_mean->x(), meta.train_mean->y()};
  }
  if (meta.grid) {
    manifest["grid"] = {{"b_lw_x", meta.grid->b_lw_x},
                        {"b_up_x", meta.grid->b_up_x},
                        {"b_lw_y", meta.grid->b_lw_y},
                        {"b_up_y", meta.grid->b_up_y},
                        {"l_x", meta.grid->l_x},
                        {"l_y", meta.grid->l_y}};
  }
  write_file(dir / "checkpoint.json", manifest.dump(2) + "\n");

  std::ofstream blob(dir / "params.bin", std::ios::binary | std::ios::trunc);
  if (!blob) throw std::runtime_error("cannot write params.bin");
  for (const tensor::Parameter& p : net.params()) {
    blob.write(reinterpret_cast<const char*>(p.value.data()),
               static_cast<std::streamsize>(
                   static_cast<std::size_t>(p.value.size()) * sizeof(double)));
  }
  if (!blob) throw std::runtime_error("short write to params.bin");
}

LoadedCheckpoint load_checkpoint(const std::filesystem::path& dir) {
  const json manifest = read_json(dir / "checkpoint.json");
  if (manifest.at("format_version").get<int>() != 1) {
    throw std::runtime_error("checkpoint: unsupported format version");
  }
  NetworkConfig cfg;
  const json& net_j = manifest.at("network");
  cfg.rows = net_j.at("rows").get<int>();
  cfg.cols = net_j.at("cols").get<int>();
  cfg.heads = net_j.at("heads").get<int>();
  cfg.l_x = net_j.at("l_x").get<int>();
  cfg.l_y = net_j.at("l_y").get<int>();
  cfg.hidden1 = net_j.at("hidden1").get<int>();
  cfg.hidden2 = net_j.at("hidden2").get<int>();
  cfg.positional_encoding = net_j.at("positional_encoding").get<bool>();
  cfg.encoder_blocks = net_j.at("encoder_blocks").get<int>();
  cfg.norm_before_attention = net_j.at("norm_before_attention").get<bool>();
  cfg.init_seed = net_j.at("init_seed").get<std::uint64_t>();
  cfg.head = head_from_string(manifest.at("head").get<std::string>());

  LoadedCheckpoint loaded;
  loaded.net = std::make_unique<AttentionNet>(cfg);
  loaded.meta.epoch = manifest.at("epoch").get<long>();
  loaded.meta.seed = manifest.at("seed").get<std::uint64_t>();
  loaded.meta.normalization_scale =
      manifest.at("normalization_scale").get<double>();
  if (manifest.contains("train_mean")) {
    const auto& tm = manifest.at("train_mean");
    loaded.meta.train_mean =
        Eigen::Vector2d(tm.at(0).get<double>(), tm.at(1).get<double>());
  }
  if (manifest.contains("grid")) {
    const auto& g = manifest.at("grid");
    loaded.meta.grid = losses::make_grid(
        g.at("b_lw_x").get<double>(), g.at("b_up_x").get<double>(),
        g.at("b_lw_y").get<double>(), g.at("b_up_y").get<double>(),
        g.at("l_x").get<int>(), g.at("l_y").get<int>());
  }

  // Validate the declared shapes against the freshly built store.
  const json& shapes = manifest.at("parameters");
  tensor::ParamStore& store = loaded.net->params();
  if (shapes.size() != store.size()) {
    throw std::runtime_error("checkpoint: parameter count mismatch");
  }
  for (std::size_t i = 0; i < store.size(); ++i) {
    const json& s = shapes.at(i);
    if (s.at("name").get<std::string>() != store[i].name ||
        s.at("rows").get<Eigen::Index>() != store[i].value.rows() ||
        s.at("cols").get<Eigen::Index>() != store[i].value.cols()) {
      throw std::runtime_error("checkpoint: shape mismatch at parameter " +
                               store[i].name);
    }
  }

  std::ifstream blob(dir / "params.bin", std::ios::binary);
  if (!blob) throw std::runtime_error("cannot read params.bin");
  for (std::size_t i = 0; i < store.size(); ++i) {
    blob.read(reinterpret_cast<char*>(store[i].value.data()),
              static_cast<std::streamsize>(
                  static_cast<std::size_t>(store[i].value.size()) *
                  sizeof(double)));
    if (!blob) {
      throw std::runtime_error("checkpoint: params.bin truncated at " +
                               store[i].name);
    }
  }
  char extra;
  if (blob.read(&extra, 1)) {
    throw std::runtime_error("checkpoint: params.bin larger than declared");
  }
  return loaded;
}

}  // namespace beamloc::attnet

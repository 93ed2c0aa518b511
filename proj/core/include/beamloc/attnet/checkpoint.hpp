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

#ifndef BEAMLOC_ATTNET_CHECKPOINT_HPP
#define BEAMLOC_ATTNET_CHECKPOINT_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>

#include "beamloc/attnet/network.hpp"
#include "beamloc/losses/bin_grid.hpp"

namespace beamloc::attnet {

// Sidecar facts a trained model needs at evaluation time.
struct CheckpointMeta {
  long epoch = 0;
  std::uint64_t seed = 0;
  double normalization_scale = 1.0;
  std::optional<Eigen::Vector2d> train_mean;  // predict-the-mean baseline
  std::optional<losses::BinGrid> grid;        // RbC decode grid
};

/// Writes <dir>/checkpoint.json (shapes, head kind, seed, epoch) and
/// <dir>/params.bin (contiguous 64-bit little-endian blob in parameter
/// order). Byte-stable for identical nets and metadata.
void save_checkpoint(const std::filesystem::path& dir, const AttentionNet& net,
                     const CheckpointMeta& meta);

struct LoadedCheckpoint {
  std::unique_ptr<AttentionNet> net;
  CheckpointMeta meta;
};

/// Rebuilds the network from <dir>; shape or blob-size mismatches throw.
LoadedCheckpoint load_checkpoint(const std::filesystem::path& dir);

}  // namespace beamloc::attnet

#endif  // BEAMLOC_ATTNET_CHECKPOINT_HPP

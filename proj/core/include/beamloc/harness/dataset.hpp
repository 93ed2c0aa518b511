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

#ifndef BEAMLOC_HARNESS_DATASET_HPP
#define BEAMLOC_HARNESS_DATASET_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace beamloc::harness {

enum class RecordPayload { kComplex64Ctf, kFloat32Fingerprint };

enum class RecordFlag : std::uint32_t {
  kClean = 0,
  kCorruptSparse = 1,
  kCorruptStale = 2,
};

// Human-readable manifest persisted as JSON next to the binary records.
struct DatasetManifest {
  int format_version = 1;
  std::string scenario = "los";
  RecordPayload payload = RecordPayload::kComplex64Ctf;
  long count = 0;
  int rows = 0;
  int cols = 0;
  double normalization_scale = 1.0;
  double dt_s = 0.02;
  double speed_mps = 4.1667;
  double carrier_hz = 3.85e9;
  double bandwidth_hz = 100e6;
  std::uint64_t seed = 0;
  double corrupt_fraction = 0.0;
  double snr_db = 20.0;
  int lap_count = 0;
  int points_per_lap = 0;
  int clean_threshold = 0;
  int ue_ports = 2;
  int codebook_az = 8;
  int codebook_el = 4;
  double extent_lo_x = 0.0, extent_hi_x = 0.0;
  double extent_lo_y = 0.0, extent_hi_y = 0.0;
};

// One stored snapshot: ground truth plus either a complex CTF or a real
// fingerprint payload, depending on the manifest.
struct DatasetRecord {
  double x = 0.0, y = 0.0, t = 0.0;
  std::uint32_t lap = 0;
  std::uint32_t flags = 0;
  Eigen::MatrixXcd ctf;  // set for kComplex64Ctf
  Eigen::MatrixXd amp;   // set for kFloat32Fingerprint
};

struct Dataset {
  DatasetManifest manifest;
  std::vector<DatasetRecord> records;
};

/// Writes <dir>/manifest.json and <dir>/records.bin (little-endian payloads,
/// float32 precision). Byte-stable for identical inputs.
void write_dataset(const std::filesystem::path& dir, const Dataset& dataset);

/// Round-trips what write_dataset stored; shape mismatches throw.
Dataset read_dataset(const std::filesystem::path& dir);

}  // namespace beamloc::harness

#endif  // BEAMLOC_HARNESS_DATASET_HPP

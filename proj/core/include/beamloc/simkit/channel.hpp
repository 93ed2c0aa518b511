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

#ifndef BEAMLOC_SIMKIT_CHANNEL_HPP
#define BEAMLOC_SIMKIT_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "beamloc/common/rng.hpp"
#include "beamloc/simkit/codebook.hpp"

namespace beamloc::simkit {

// One resolved propagation path, arrival geometry at the base station plus
// a complex coefficient per UE antenna port.
struct MultipathComponent {
  double delay_s = 0.0;  // excess delay after timing alignment
  std::vector<std::complex<double>> port_gain;
  double azimuth_rad = 0.0;
  double elevation_rad = 0.0;
};

// Beamspace channel transfer function. Rows stack, per UE port, the
// horizontal then the vertical polarized beams; columns are subcarriers.
struct ChannelSnapshot {
  Eigen::MatrixXcd ctf;
  double carrier_hz = 3.85e9;
  double bandwidth_hz = 100e6;
  std::optional<bool> valid;  // unset until cleaning
};

enum class CorruptMode { kSparse, kStale };

/// Uniform subcarrier grid of `count` absolute frequencies centered on the
/// carrier (bin centers, spacing bandwidth/count).
std::vector<double> subcarrier_grid(double carrier_hz, double bandwidth_hz,
                                    int count);

/// Noiseless beamspace CTF: entry (row, k) sums beam_gain * port_gain *
/// exp(-j 2 pi f_k delay) over all paths. Linear in the path gains.
ChannelSnapshot synth_snapshot(const ArrayCodebook& codebook,
                               const std::vector<MultipathComponent>& paths,
                               const std::vector<double>& f_grid,
                               int ue_ports = 2);

/// Adds circular white Gaussian noise at the given SNR (relative to the
/// mean-square entry of the snapshot).
void add_awgn(ChannelSnapshot& snapshot, double snr_db, Rng& rng);

/// Deliberately damaged copy: kSparse zeroes random entries until fewer than
/// `sparse_threshold` remain nonzero, kStale repeats one row everywhere.
ChannelSnapshot corrupt_snapshot(const ChannelSnapshot& snapshot,
                                 CorruptMode mode, std::uint64_t seed,
                                 int sparse_threshold = 3500);

}  // namespace beamloc::simkit

#endif  // BEAMLOC_SIMKIT_CHANNEL_HPP

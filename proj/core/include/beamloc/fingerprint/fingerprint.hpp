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

#ifndef BEAMLOC_FINGERPRINT_FINGERPRINT_HPP
#define BEAMLOC_FINGERPRINT_FINGERPRINT_HPP

#include <Eigen/Dense>
#include <vector>

#include "beamloc/simkit/channel.hpp"

namespace beamloc::fingerprint {

/// Cleaning threshold matching the measured 128x46 layout (~60% of entries).
constexpr int kDefaultCleanThreshold = 3500;

enum class Verdict { kValid, kInvalidSparse, kInvalidStale };

struct CleaningReport {
  Verdict verdict = Verdict::kValid;
  long nonzero_count = 0;
};

// Amplitude impulse-response beam matrix, the network input.
struct FingerprintMatrix {
  Eigen::MatrixXd amp;  // nonnegative, same shape as the source CTF
  double source_time_s = 0.0;
};

/// Flags snapshots with too few nonzero entries or frozen rows/columns.
/// Pure; scaling a snapshot by a nonzero constant cannot change the verdict.
CleaningReport validate(const simkit::ChannelSnapshot& snapshot,
                        int threshold = kDefaultCleanThreshold);

/// w[f] = sin^2(pi f / F), f = 0..F-1.
Eigen::VectorXd hann_window(int f_count);

/// |row-wise IDFT of the Hann-windowed CTF|. The inverse transform is the
/// 1/F-scaled convention, delay bin spacing 1/(F * subcarrier spacing).
/// The snapshot must have passed cleaning.
FingerprintMatrix to_fingerprint(const simkit::ChannelSnapshot& snapshot,
                                 int threshold = kDefaultCleanThreshold,
                                 bool window = true);

/// One global scalar applied to every snapshot so the squared Frobenius
/// norm of the stacked tensor equals T * rows * cols (unit mean-square
/// entry). Returns the scalar.
double normalize_dataset(std::vector<simkit::ChannelSnapshot>& snapshots);

}  // namespace beamloc::fingerprint

#endif  // BEAMLOC_FINGERPRINT_FINGERPRINT_HPP

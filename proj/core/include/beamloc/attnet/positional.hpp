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

#ifndef BEAMLOC_ATTNET_POSITIONAL_HPP
#define BEAMLOC_ATTNET_POSITIONAL_HPP

#include <Eigen/Dense>

namespace beamloc::attnet {

// Fixed sinusoidal positional encoding. Entry (row y = 1..rows, column
// x = 0..cols-1) is sin(x / 10000^(y/rows)) for odd y and
// cos(x / 10000^((y-1)/rows)) for even y, so the encoding varies along the
// column (delay) axis the attention attends over.
Eigen::MatrixXd positional_encoding_matrix(int rows, int cols);

/// X plus the fixed encoding matrix of matching shape.
Eigen::MatrixXd positional_encode(const Eigen::MatrixXd& x);

}  // namespace beamloc::attnet

#endif  // BEAMLOC_ATTNET_POSITIONAL_HPP

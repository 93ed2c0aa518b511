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

#ifndef BEAMLOC_LOSSES_BIN_GRID_HPP
#define BEAMLOC_LOSSES_BIN_GRID_HPP

#include <Eigen/Dense>

namespace beamloc::losses {

// Equal-width discretization of the coordinate ranges for the
// regression-by-classification head. Endpoint k is the lower edge of bin k.
struct BinGrid {
  double b_lw_x = 0.0, b_up_x = 1.0;
  double b_lw_y = 0.0, b_up_y = 1.0;
  int l_x = 2, l_y = 2;

  double bin_width_x() const { return (b_up_x - b_lw_x) / l_x; }
  double bin_width_y() const { return (b_up_y - b_lw_y) / l_y; }
  double endpoint_x(int k) const { return b_lw_x + k * bin_width_x(); }
  double endpoint_y(int k) const { return b_lw_y + k * bin_width_y(); }

  Eigen::VectorXd endpoints_x() const;
  Eigen::VectorXd endpoints_y() const;
};

/// Validated grid over the scenario extents.
BinGrid make_grid(double b_lw_x, double b_up_x, double b_lw_y, double b_up_y,
                  int l_x, int l_y);

}  // namespace beamloc::losses

#endif  // BEAMLOC_LOSSES_BIN_GRID_HPP

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

#include "beamloc/losses/bin_grid.hpp"

#include <stdexcept>

namespace beamloc::losses {

Eigen::VectorXd BinGrid::endpoints_x() const {
  Eigen::VectorXd e(l_x);
  for (int k = 0; k < l_x; ++k) e(k) = endpoint_x(k);
  return e;
}

Eigen::VectorXd BinGrid::endpoints_y() const {
  Eigen::VectorXd e(l_y);
  for (int k = 0; k < l_y; ++k) e(k) = endpoint_y(k);
  return e;
}

BinGrid make_grid(double b_lw_x, double b_up_x, double b_lw_y, double b_up_y,
                  int l_x, int l_y) {
  if (!(b_up_x > b_lw_x) || !(b_up_y > b_lw_y)) {
    throw std::invalid_argument("make_grid: degenerate extents");
  }
  if (l_x < 2 || l_y < 2) {
    throw std::invalid_argument("make_grid: need at least 2 bins per axis");
  }
  BinGrid grid;
  grid.b_lw_x = b_lw_x;
  grid.b_up_x = b_up_x;
  grid.b_lw_y = b_lw_y;
  grid.b_up_y = b_up_y;
  grid.l_x = l_x;
  grid.l_y = l_y;
  return grid;
}

}  // namespace beamloc::losses

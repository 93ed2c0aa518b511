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

#include "beamloc/attnet/positional.hpp"

#include <cmath>
#include <stdexcept>

namespace beamloc::attnet {

Eigen::MatrixXd positional_encoding_matrix(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("positional_encoding_matrix: empty shape");
  }
  Eigen::MatrixXd pe(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const int y = r + 1;  // 1-based row index
    const bool odd = (y % 2) == 1;
    const double exponent = odd ? static_cast<double>(y) / rows
                                : static_cast<double>(y - 1) / rows;
    const double denom = std::pow(10000.0, exponent);
    for (int x = 0; x < cols; ++x) {
      const double arg = static_cast<double>(x) / denom;
      pe(r, x) = odd ? std::sin(arg) : std::cos(arg);
    }
  }
  return pe;
}

Eigen::MatrixXd positional_encode(const Eigen::MatrixXd& x) {
  return x + positional_encoding_matrix(static_cast<int>(x.rows()),
                                        static_cast<int>(x.cols()));
}

}  // namespace beamloc::attnet

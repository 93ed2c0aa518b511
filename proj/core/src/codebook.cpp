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

#include "beamloc/simkit/codebook.hpp"

#include <cmath>
#include <stdexcept>

namespace beamloc::simkit {

namespace {

constexpr double kPi = 3.141592653589793;

// sum_{m=0}^{M-1} exp(j m x) -- geometric series, normalized by 1/sqrt(M).
std::complex<double> dirichlet(double x, int m_count) {
  const double half = 0.5 * x;
  const double denom = std::sin(half);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m_count));
  if (std::abs(denom) < 1e-12) {
    return {static_cast<double>(m_count) * norm, 0.0};
  }
  const double mag = std::sin(0.5 * m_count * x) / denom;
  const double phase = 0.5 * (m_count - 1) * x;
  return std::polar(mag * norm, phase);
}

}  // namespace

ArrayCodebook::ArrayCodebook(int az_size, int el_size)
    : az_size_(az_size), el_size_(el_size) {
  if (az_size < 1 || el_size < 1) {
    throw std::invalid_argument("ArrayCodebook: grid sizes must be >= 1");
  }
}

std::complex<double> ArrayCodebook::beam_gain(int beam, double azimuth_rad,
                                              double elevation_rad,
                                              double /*f_hz*/) const {
  if (beam < 0 || beam >= n_beams()) {
    throw std::invalid_argument("ArrayCodebook: beam index out of range");
  }
  const bool horizontal = beam < n_h();
  const int local = horizontal ? beam : beam - n_h();
  const int u = local / el_size_;  // azimuth DFT index
  const int v = local % el_size_;  // elevation DFT index

  // Half-wavelength element spacing: spatial phase per element index.
  const double kx = kPi * std::sin(azimuth_rad) * std::cos(elevation_rad);
  const double kz = kPi * std::sin(elevation_rad);

  const std::complex<double> az_part =
      dirichlet(kx - 2.0 * kPi * u / az_size_, az_size_);
  const std::complex<double> el_part =
      dirichlet(kz - 2.0 * kPi * v / el_size_, el_size_);

  // Element patterns distinguish the polarization groups.
  const double ce = std::cos(elevation_rad);
  const double pattern =
      horizontal ? ce * (0.7 + 0.3 * std::cos(azimuth_rad)) : ce;

  return pattern * az_part * el_part;
}

}  // namespace beamloc::simkit

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

#ifndef BEAMLOC_SIMKIT_CODEBOOK_HPP
#define BEAMLOC_SIMKIT_CODEBOOK_HPP

#include <complex>

namespace beamloc::simkit {

// 2-D DFT beamforming codebook over a dual-polarized uniform rectangular
// array with half-wavelength spacing. Beams are frequency-flat within the
// band; the gain is the array factor times a per-polarization element
// pattern, evaluated in closed form (separable Dirichlet kernels).
//
// Beam indexing follows the channel row stacking: horizontal-polarized
// beams 0 .. n_h()-1, then vertical-polarized beams n_h() .. n_beams()-1.
class ArrayCodebook {
 public:
  /// az_size x el_size DFT grid per polarization (default 8x4 -> 32+32).
  explicit ArrayCodebook(int az_size = 8, int el_size = 4);

  int n_h() const { return az_size_ * el_size_; }
  int n_v() const { return az_size_ * el_size_; }
  int n_beams() const { return 2 * az_size_ * el_size_; }

  /// Complex gain of `beam` towards (azimuth, elevation), angles in radians
  /// relative to the array boresight. Deterministic; flat in `f_hz`.
  std::complex<double> beam_gain(int beam, double azimuth_rad,
                                 double elevation_rad, double f_hz) const;

 private:
  int az_size_;
  int el_size_;
};

}  // namespace beamloc::simkit

#endif  // BEAMLOC_SIMKIT_CODEBOOK_HPP

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

#ifndef BEAMLOC_TRACK_KALMAN_HPP
#define BEAMLOC_TRACK_KALMAN_HPP

#include <Eigen/Dense>
#include <vector>

namespace beamloc::track {

// Constant-velocity state [p_x, p_y, v_x, v_y]; the covariance is kept
// symmetric by construction after every update.
struct TrackState {
  Eigen::Vector4d state = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
  double t = 0.0;
};

struct KfConfig {
  double dt = 0.02;   // s
  double eps1 = 0.05; // state noise std
  double eps2 = 1.2;  // observation noise std

  Eigen::Matrix4d transition() const;
  Eigen::Matrix4d state_noise() const {
    return eps1 * eps1 * Eigen::Matrix4d::Identity();
  }
  Eigen::Matrix2d observation_noise() const {
    return eps2 * eps2 * Eigen::Matrix2d::Identity();
  }
};

/// Time update: state through the transition model, covariance inflated by
/// the state noise.
TrackState predict(const TrackState& s, const KfConfig& cfg);

/// Measurement update with a 2-D position estimate; the 2x2 innovation
/// matrix is inverted in closed form.
TrackState update(const TrackState& s, const Eigen::Vector2d& z,
                  const KfConfig& cfg);

/// Filters a uniformly spaced estimate sequence. Initialized from the first
/// two points (finite-difference velocity, observation-noise prior on
/// position, wide prior on velocity); returns posterior positions.
std::vector<Eigen::Vector2d> smooth(const std::vector<Eigen::Vector2d>& estimates,
                                    const KfConfig& cfg);

}  // namespace beamloc::track

#endif  // BEAMLOC_TRACK_KALMAN_HPP

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

#include "beamloc/track/kalman.hpp"

#include <cmath>
#include <stdexcept>

namespace beamloc::track {

namespace {

Eigen::Matrix<double, 2, 4> observation_matrix() {
  Eigen::Matrix<double, 2, 4> phi = Eigen::Matrix<double, 2, 4>::Zero();
  phi(0, 0) = 1.0;
  phi(1, 1) = 1.0;
  return phi;
}

void check_config(const KfConfig& cfg) {
  if (cfg.dt <= 0.0 || cfg.eps1 <= 0.0 || cfg.eps2 <= 0.0) {
    throw std::invalid_argument("KfConfig: dt, eps1, eps2 must be positive");
  }
}

}  // namespace

Eigen::Matrix4d KfConfig::transition() const {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

TrackState predict(const TrackState& s, const KfConfig& cfg) {
  check_config(cfg);
  const Eigen::Matrix4d f = cfg.transition();
  TrackState out;
  out.state = f * s.state;
  out.cov = f * s.cov * f.transpose() + cfg.state_noise();
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.t = s.t + cfg.dt;
  return out;
}

TrackState update(const TrackState& s, const Eigen::Vector2d& z,
                  const KfConfig& cfg) {
  check_config(cfg);
  if (!z.allFinite()) {
    throw std::invalid_argument("kalman update: non-finite measurement");
  }
  const Eigen::Matrix<double, 2, 4> phi = observation_matrix();
  const Eigen::Matrix2d innovation_cov =
      phi * s.cov * phi.transpose() + cfg.observation_noise();
  const double det = innovation_cov(0, 0) * innovation_cov(1, 1) -
                     innovation_cov(0, 1) * innovation_cov(1, 0);
  if (!(std::abs(det) > 0.0) || !std::isfinite(det)) {
    throw std::runtime_error("kalman update: singular innovation matrix");
  }
  Eigen::Matrix2d inv;
  inv << innovation_cov(1, 1), -innovation_cov(0, 1),
      -innovation_cov(1, 0), innovation_cov(0, 0);
  inv /= det;

  const Eigen::Matrix<double, 4, 2> gain = s.cov * phi.transpose() * inv;
  const Eigen::Vector2d residual = z - phi * s.state;

  TrackState out;
  out.state = s.state + gain * residual;
  out.cov = (Eigen::Matrix4d::Identity() - gain * phi) * s.cov;
  out.cov = 0.5 * (out.cov + out.cov.transpose()).eval();
  out.t = s.t;
  return out;
}

std::vector<Eigen::Vector2d> smooth(
    const std::vector<Eigen::Vector2d>& estimates, const KfConfig& cfg) {
  check_config(cfg);
  if (estimates.size() < 2) {
    throw std::invalid_argument("kalman smooth: need at least 2 estimates");
  }

  TrackState state;
  state.state.head<2>() = estimates[1];
  state.state.tail<2>() = (estimates[1] - estimates[0]) / cfg.dt;
  state.cov.setZero();
  state.cov(0, 0) = state.cov(1, 1) = cfg.eps2 * cfg.eps2;
  const double wide = 100.0 * cfg.eps2 * cfg.eps2 / (cfg.dt * cfg.dt);
  state.cov(2, 2) = state.cov(3, 3) = wide;
  state.t = cfg.dt;

  std::vector<Eigen::Vector2d> out;
  out.reserve(estimates.size());
  out.push_back(estimates[0]);
  out.push_back(estimates[1]);
  for (std::size_t i = 2; i < estimates.size(); ++i) {
    state = predict(state, cfg);
    state = update(state, estimates[i], cfg);
    out.push_back(state.state.head<2>());
  }
  return out;
}

}  // namespace beamloc::track

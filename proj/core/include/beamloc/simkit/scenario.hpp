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

#ifndef BEAMLOC_SIMKIT_SCENARIO_HPP
#define BEAMLOC_SIMKIT_SCENARIO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "beamloc/simkit/channel.hpp"
#include "beamloc/simkit/trajectory.hpp"

namespace beamloc::simkit {

// World geometry and propagation statistics for one synthetic environment.
//
// LoS:   one dominant direct path plus a few weak reflections.
// NLoS:  reflections only, none dominant.
// Mixed: direct path blocked while the UE azimuth (seen from the base
//        station) falls inside the blockage arc.
struct ScenarioConfig {
  Scenario kind = Scenario::kLos;
  TrackShape track;
  Eigen::Vector3d bs_position{-60.0, 0.0, 18.0};  // m, track plane at z = 0
  double snr_db = 20.0;
  int reflector_count = 3;
  double reflector_level_lo = 0.178;  // amplitude relative to the direct path
  double reflector_level_hi = 0.178;  // (-15 dB for the LoS profile)
  double reflector_ring_lo = 15.0;    // m from track center
  double reflector_ring_hi = 40.0;
  double blockage_az_lo = 0.0;  // rad, world frame; lo >= hi disables
  double blockage_az_hi = 0.0;
  int ue_ports = 2;
  double speed_mps = 4.1667;  // ~15 km/h
  double dt_s = 0.02;
};

ScenarioConfig default_scenario(Scenario kind);

// Deterministic multipath world: reflector positions and per-port
// reflection coefficients are fixed by the seed at construction, so the
// channel evolves smoothly as the UE moves.
class ScenarioModel {
 public:
  ScenarioModel(const ScenarioConfig& config, std::uint64_t seed);

  /// Resolved paths at a UE position; delays are excess over the first
  /// arrival (receiver timing alignment), geometry phases folded into the
  /// port gains.
  std::vector<MultipathComponent> paths_for(const Eigen::Vector2d& ue) const;

  bool line_of_sight_blocked(const Eigen::Vector2d& ue) const;

  /// Axis-aligned world box containing every reachable UE position.
  void extents(double margin, Eigen::Vector2d& lo, Eigen::Vector2d& hi) const;

  const ScenarioConfig& config() const { return config_; }

 private:
  struct Reflector {
    Eigen::Vector3d position;
    std::vector<std::complex<double>> port_coeff;
  };

  ScenarioConfig config_;
  double boresight_az_ = 0.0;
  std::vector<Reflector> reflectors_;
};

std::string to_string(Scenario kind);
Scenario scenario_from_string(const std::string& name);

}  // namespace beamloc::simkit

#endif  // BEAMLOC_SIMKIT_SCENARIO_HPP

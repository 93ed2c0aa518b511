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

#ifndef BEAMLOC_SIMKIT_TRAJECTORY_HPP
#define BEAMLOC_SIMKIT_TRAJECTORY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace beamloc::simkit {

enum class Scenario { kLos, kNlos, kMixed };

// Rectangular closed-loop route. A small lap-dependent lateral wobble keeps
// repeated laps from retracing each other exactly, like a real vehicle.
struct TrackShape {
  Eigen::Vector2d center{0.0, 0.0};
  double width = 42.0;   // m
  double height = 20.0;  // m
  double wobble_amplitude = 0.25;  // m, 0 disables
  int wobble_periods = 3;

  double perimeter() const { return 2.0 * (width + height); }
};

struct GroundTruthTrack {
  std::vector<Eigen::Vector2d> positions;  // m
  std::vector<double> timestamps;          // s, uniform spacing
  int lap_count = 0;
  int points_per_lap = 0;
};

/// Closed-loop trajectory over `shape`, traversed `laps` times at constant
/// speed. The seed picks the start offset along the loop and the per-lap
/// wobble phases. speed 0 parks the UE at the start point.
GroundTruthTrack gen_trajectory(const TrackShape& shape, int laps,
                                double speed_mps, double dt_s,
                                std::uint64_t seed);

/// Same, using the default route geometry of the scenario.
GroundTruthTrack gen_trajectory(Scenario scenario, int laps, double speed_mps,
                                double dt_s, std::uint64_t seed);

/// Default route geometry per scenario.
TrackShape default_track(Scenario scenario);

}  // namespace beamloc::simkit

#endif  // BEAMLOC_SIMKIT_TRAJECTORY_HPP

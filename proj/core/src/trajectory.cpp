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

#include "beamloc/simkit/trajectory.hpp"

#include <cmath>
#include <stdexcept>

#include "beamloc/common/rng.hpp"

namespace beamloc::simkit {

namespace {

constexpr double kTwoPi = 6.283185307179586;

// Point and outward normal at arclength s along the rectangle, s in [0, P).
void rect_point(const TrackShape& shape, double s, Eigen::Vector2d& point,
                Eigen::Vector2d& normal) {
  const double w = shape.width;
  const double h = shape.height;
  const Eigen::Vector2d o = shape.center - Eigen::Vector2d(w / 2.0, h / 2.0);
  if (s < w) {  // bottom, heading +x
    point = o + Eigen::Vector2d(s, 0.0);
    normal = {0.0, -1.0};
  } else if (s < w + h) {  // right, heading +y
    point = o + Eigen::Vector2d(w, s - w);
    normal = {1.0, 0.0};
  } else if (s < 2.0 * w + h) {  // top, heading -x
    point = o + Eigen::Vector2d(w - (s - w - h), h);
    normal = {0.0, 1.0};
  } else {  // left, heading -y
    point = o + Eigen::Vector2d(0.0, h - (s - 2.0 * w - h));
    normal = {-1.0, 0.0};
  }
}

}  // namespace

GroundTruthTrack gen_trajectory(const TrackShape& shape, int laps,
                                double speed_mps, double dt_s,
                                std::uint64_t seed) {
  if (laps < 1) throw std::invalid_argument("gen_trajectory: laps must be >= 1");
  if (speed_mps < 0.0) {
    throw std::invalid_argument("gen_trajectory: negative speed");
  }
  if (dt_s <= 0.0) {
    throw std::invalid_argument("gen_trajectory: dt must be positive");
  }
  const double perimeter = shape.perimeter();
  if (perimeter <= 0.0) {
    throw std::invalid_argument("gen_trajectory: degenerate track shape");
  }

  const double s0 = Rng::fork(seed, 0x5741).uniform(0.0, perimeter);
  const int points_per_lap =
      speed_mps > 0.0
          ? static_cast<int>(std::llround(perimeter / (speed_mps * dt_s)))
          : 1;

  std::vector<double> wobble_phase(static_cast<std::size_t>(laps));
  for (int lap = 0; lap < laps; ++lap) {
    wobble_phase[static_cast<std::size_t>(lap)] =
        Rng::fork(seed, 0x1000 + static_cast<std::uint64_t>(lap))
            .uniform(0.0, kTwoPi);
  }

  GroundTruthTrack track;
  track.lap_count = laps;
  track.points_per_lap = points_per_lap;
  const std::size_t total = static_cast<std::size_t>(laps) *
                            static_cast<std::size_t>(points_per_lap);
  track.positions.reserve(total);
  track.timestamps.reserve(total);

  for (std::size_t i = 0; i < total; ++i) {
    const double s = std::fmod(
        s0 + static_cast<double>(i) * speed_mps * dt_s, perimeter);
    const int lap =
        speed_mps > 0.0 ? static_cast<int>(i) / points_per_lap : 0;
    Eigen::Vector2d point, normal;
    rect_point(shape, s, point, normal);
    if (shape.wobble_amplitude != 0.0) {
      const double w =
          shape.wobble_amplitude *
          std::sin(kTwoPi * shape.wobble_periods * s / perimeter +
                   wobble_phase[static_cast<std::size_t>(lap)]);
      point += w * normal;
    }
    track.positions.push_back(point);
    track.timestamps.push_back(static_cast<double>(i) * dt_s);
  }
  return track;
}

TrackShape default_track(Scenario scenario) {
  TrackShape shape;
  switch (scenario) {
    case Scenario::kLos:
      shape.width = 42.0;
      shape.height = 20.0;
      break;
    case Scenario::kNlos:
      shape.width = 36.0;
      shape.height = 16.0;
      break;
    case Scenario::kMixed:
      shape.width = 42.0;
      shape.height = 20.0;
      break;
  }
  return shape;
}

GroundTruthTrack gen_trajectory(Scenario scenario, int laps, double speed_mps,
                                double dt_s, std::uint64_t seed) {
  return gen_trajectory(default_track(scenario), laps, speed_mps, dt_s, seed);
}

}  // namespace beamloc::simkit

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

#include "beamloc/simkit/scenario.hpp"

#include <cmath>
#include <stdexcept>

namespace beamloc::simkit {

namespace {

constexpr double kTwoPi = 6.283185307179586;
constexpr double kSpeedOfLight = 299792458.0;
constexpr double kCarrierHz = 3.85e9;

double wrap_angle(double a) {
  while (a > 3.141592653589793) a -= kTwoPi;
  while (a < -3.141592653589793) a += kTwoPi;
  return a;
}

}  // namespace

ScenarioConfig default_scenario(Scenario kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.track = default_track(kind);
  switch (kind) {
    case Scenario::kLos:
      cfg.bs_position = {-60.0, 0.0, 18.0};
      cfg.snr_db = 20.0;
      cfg.reflector_count = 3;
      cfg.reflector_level_lo = cfg.reflector_level_hi = 0.178;  // -15 dB
      break;
    case Scenario::kNlos:
      cfg.bs_position = {-65.0, 8.0, 22.0};
      cfg.snr_db = 10.0;
      cfg.reflector_count = 8;
      cfg.reflector_level_lo = 0.3;
      cfg.reflector_level_hi = 1.0;
      break;
    case Scenario::kMixed:
      cfg.bs_position = {-60.0, 0.0, 18.0};
      cfg.snr_db = 15.0;
      cfg.reflector_count = 5;
      cfg.reflector_level_lo = 0.15;
      cfg.reflector_level_hi = 0.6;
      cfg.blockage_az_lo = 0.01;
      cfg.blockage_az_hi = 0.26;  // blocks roughly a third of the lap
      break;
  }
  return cfg;
}

ScenarioModel::ScenarioModel(const ScenarioConfig& config, std::uint64_t seed)
    : config_(config) {
  if (config_.reflector_count < 0) {
    throw std::invalid_argument("ScenarioModel: negative reflector count");
  }
  if (config_.kind == Scenario::kNlos && config_.reflector_count == 0) {
    throw std::invalid_argument("ScenarioModel: NLoS needs reflectors");
  }
  const Eigen::Vector2d bs2d = config_.bs_position.head<2>();
  const Eigen::Vector2d to_center = config_.track.center - bs2d;
  boresight_az_ = std::atan2(to_center.y(), to_center.x());

  Rng rng = Rng::fork(seed, 0x5CEA);
  reflectors_.reserve(static_cast<std::size_t>(config_.reflector_count));
  for (int r = 0; r < config_.reflector_count; ++r) {
    Reflector refl;
    const double radius =
        rng.uniform(config_.reflector_ring_lo, config_.reflector_ring_hi);
    const double angle = rng.uniform(0.0, kTwoPi);
    refl.position = {config_.track.center.x() + radius * std::cos(angle),
                     config_.track.center.y() + radius * std::sin(angle),
                     rng.uniform(0.0, 8.0)};
    const double level =
        rng.uniform(config_.reflector_level_lo, config_.reflector_level_hi);
    refl.port_coeff.resize(static_cast<std::size_t>(config_.ue_ports));
    for (auto& c : refl.port_coeff) {
      c = std::polar(level, rng.uniform(0.0, kTwoPi));
    }
    reflectors_.push_back(std::move(refl));
  }
}

bool ScenarioModel::line_of_sight_blocked(const Eigen::Vector2d& ue) const {
  if (config_.kind == Scenario::kNlos) return true;
  if (config_.blockage_az_lo >= config_.blockage_az_hi) return false;
  const Eigen::Vector2d bs2d = config_.bs_position.head<2>();
  const double az = std::atan2(ue.y() - bs2d.y(), ue.x() - bs2d.x());
  return az >= config_.blockage_az_lo && az <= config_.blockage_az_hi;
}

std::vector<MultipathComponent> ScenarioModel::paths_for(
    const Eigen::Vector2d& ue) const {
  const Eigen::Vector3d ue3d(ue.x(), ue.y(), 0.0);
  const Eigen::Vector3d bs = config_.bs_position;
  const double direct_dist = (ue3d - bs).norm();

  struct Raw {
    double total_dist;
    Eigen::Vector3d arrival_from;  // last bounce point (or the UE itself)
    const std::vector<std::complex<double>>* coeff;  // null for direct
  };
  std::vector<Raw> raw;
  const bool has_los = !line_of_sight_blocked(ue);
  if (has_los) raw.push_back({direct_dist, ue3d, nullptr});
  for (const Reflector& r : reflectors_) {
    const double total = (r.position - bs).norm() + (ue3d - r.position).norm();
    raw.push_back({total, r.position, &r.port_coeff});
  }
  if (raw.empty()) {
    throw std::runtime_error("ScenarioModel: no paths reach the UE");
  }

  double first_arrival = raw.front().total_dist;
  for (const Raw& r : raw) first_arrival = std::min(first_arrival, r.total_dist);

  std::vector<MultipathComponent> paths;
  paths.reserve(raw.size());
  for (const Raw& r : raw) {
    MultipathComponent p;
    p.delay_s = (r.total_dist - first_arrival) / kSpeedOfLight;
    const Eigen::Vector3d d = r.arrival_from - bs;
    const double horiz = std::hypot(d.x(), d.y());
    p.azimuth_rad = wrap_angle(std::atan2(d.y(), d.x()) - boresight_az_);
    p.elevation_rad = std::atan2(d.z(), horiz);
    // Carrier phase over the full travel distance and 1/d amplitude decay.
    const std::complex<double> geom =
        std::polar(1.0 / r.total_dist,
                   -kTwoPi * kCarrierHz * r.total_dist / kSpeedOfLight);
    p.port_gain.resize(static_cast<std::size_t>(config_.ue_ports));
    for (int m = 0; m < config_.ue_ports; ++m) {
      const std::complex<double> port_coeff =
          r.coeff ? (*r.coeff)[static_cast<std::size_t>(m)]
                  : std::complex<double>(1.0, 0.0);
      p.port_gain[static_cast<std::size_t>(m)] = geom * port_coeff;
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

void ScenarioModel::extents(double margin, Eigen::Vector2d& lo,
                            Eigen::Vector2d& hi) const {
  const TrackShape& t = config_.track;
  const double pad = margin + std::abs(t.wobble_amplitude);
  lo = {t.center.x() - t.width / 2.0 - pad, t.center.y() - t.height / 2.0 - pad};
  hi = {t.center.x() + t.width / 2.0 + pad, t.center.y() + t.height / 2.0 + pad};
}

std::string to_string(Scenario kind) {
  switch (kind) {
    case Scenario::kLos:
      return "los";
    case Scenario::kNlos:
      return "nlos";
    case Scenario::kMixed:
      return "mixed";
  }
  return "los";
}

Scenario scenario_from_string(const std::string& name) {
  if (name == "los") return Scenario::kLos;
  if (name == "nlos") return Scenario::kNlos;
  if (name == "mixed") return Scenario::kMixed;
  throw std::invalid_argument("unknown scenario '" + name +
                              "' (expected los|nlos|mixed)");
}

}  // namespace beamloc::simkit

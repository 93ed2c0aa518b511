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

#include "beamloc/simkit/channel.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beamloc::simkit {

namespace {
constexpr double kTwoPi = 6.283185307179586;
}

std::vector<double> subcarrier_grid(double carrier_hz, double bandwidth_hz,
                                    int count) {
  if (count < 1) throw std::invalid_argument("subcarrier_grid: count < 1");
  std::vector<double> grid(static_cast<std::size_t>(count));
  const double step = bandwidth_hz / count;
  const double start = carrier_hz - bandwidth_hz / 2.0 + step / 2.0;
  for (int k = 0; k < count; ++k) {
    grid[static_cast<std::size_t>(k)] = start + k * step;
  }
  return grid;
}

ChannelSnapshot synth_snapshot(const ArrayCodebook& codebook,
                               const std::vector<MultipathComponent>& paths,
                               const std::vector<double>& f_grid,
                               int ue_ports) {
  if (paths.empty()) {
    throw std::invalid_argument("synth_snapshot: no propagation paths");
  }
  if (f_grid.empty()) {
    throw std::invalid_argument("synth_snapshot: empty frequency grid");
  }
  if (ue_ports < 1) {
    throw std::invalid_argument("synth_snapshot: ue_ports < 1");
  }
  const int beams = codebook.n_beams();
  const int f_count = static_cast<int>(f_grid.size());

  ChannelSnapshot snapshot;
  snapshot.carrier_hz = 0.5 * (f_grid.front() + f_grid.back());
  snapshot.bandwidth_hz =
      (f_grid.back() - f_grid.front()) +
      (f_grid.size() > 1 ? (f_grid[1] - f_grid[0]) : 0.0);
  snapshot.ctf = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(ue_ports) * beams, f_count);

  std::vector<std::complex<double>> phase(static_cast<std::size_t>(f_count));
  for (const MultipathComponent& path : paths) {
    if (static_cast<int>(path.port_gain.size()) < ue_ports) {
      throw std::invalid_argument(
          "synth_snapshot: path has fewer port gains than ue_ports");
    }
    for (int k = 0; k < f_count; ++k) {
      phase[static_cast<std::size_t>(k)] = std::polar(
          1.0, -kTwoPi * f_grid[static_cast<std::size_t>(k)] * path.delay_s);
    }
    for (int beam = 0; beam < beams; ++beam) {
      const std::complex<double> beta = codebook.beam_gain(
          beam, path.azimuth_rad, path.elevation_rad, f_grid.front());
      if (beta == std::complex<double>(0.0, 0.0)) continue;
      for (int port = 0; port < ue_ports; ++port) {
        const std::complex<double> coeff =
            beta * path.port_gain[static_cast<std::size_t>(port)];
        const Eigen::Index row =
            static_cast<Eigen::Index>(port) * beams + beam;
        for (int k = 0; k < f_count; ++k) {
          snapshot.ctf(row, k) += coeff * phase[static_cast<std::size_t>(k)];
        }
      }
    }
  }
  return snapshot;
}

void add_awgn(ChannelSnapshot& snapshot, double snr_db, Rng& rng) {
  const double mean_square =
      snapshot.ctf.squaredNorm() / static_cast<double>(snapshot.ctf.size());
  if (mean_square <= 0.0) return;
  const double sigma =
      std::sqrt(mean_square / std::pow(10.0, snr_db / 10.0));
  for (Eigen::Index j = 0; j < snapshot.ctf.cols(); ++j) {
    for (Eigen::Index i = 0; i < snapshot.ctf.rows(); ++i) {
      snapshot.ctf(i, j) += sigma * rng.cnormal();
    }
  }
}

ChannelSnapshot corrupt_snapshot(const ChannelSnapshot& snapshot,
                                 CorruptMode mode, std::uint64_t seed,
                                 int sparse_threshold) {
  ChannelSnapshot out = snapshot;
  out.valid.reset();
  Rng rng = Rng::fork(seed, 0xC0);
  if (mode == CorruptMode::kStale) {
    const Eigen::Index source = static_cast<Eigen::Index>(
        rng.uniform_int(0, snapshot.ctf.rows() - 1));
    const Eigen::RowVectorXcd row = snapshot.ctf.row(source);
    for (Eigen::Index i = 0; i < out.ctf.rows(); ++i) out.ctf.row(i) = row;
    return out;
  }

  // kSparse: zero random nonzero entries until under the cleaning threshold.
  std::vector<Eigen::Index> nonzero;
  nonzero.reserve(static_cast<std::size_t>(out.ctf.size()));
  for (Eigen::Index idx = 0; idx < out.ctf.size(); ++idx) {
    if (out.ctf(idx) != std::complex<double>(0.0, 0.0)) nonzero.push_back(idx);
  }
  const std::size_t keep =
      sparse_threshold > 0 ? static_cast<std::size_t>(sparse_threshold) - 1 : 0;
  if (nonzero.size() <= keep) return out;
  // Fisher-Yates over the nonzero index list.
  for (std::size_t i = nonzero.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(i)));
    std::swap(nonzero[i], nonzero[j]);
  }
  for (std::size_t i = keep; i < nonzero.size(); ++i) {
    out.ctf(nonzero[i]) = std::complex<double>(0.0, 0.0);
  }
  return out;
}

}  // namespace beamloc::simkit

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

#ifndef BEAMLOC_HARNESS_METRICS_HPP
#define BEAMLOC_HARNESS_METRICS_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <vector>

namespace beamloc::harness {

/// Root mean square Euclidean position error.
double rmse(const std::vector<Eigen::Vector2d>& estimates,
            const std::vector<Eigen::Vector2d>& truths);

/// Empirical CDF points (error, cumulative probability), non-decreasing.
std::vector<std::pair<double, double>> error_cdf(std::vector<double> errors);

/// Round-trip-exact decimal formatting for CSV payloads.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  double number(std::size_t row, const std::string& column) const;
  std::size_t column_index(const std::string& column) const;
};

void write_csv(const std::filesystem::path& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace beamloc::harness

#endif  // BEAMLOC_HARNESS_METRICS_HPP

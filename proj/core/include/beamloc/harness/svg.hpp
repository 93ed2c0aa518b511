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

#ifndef BEAMLOC_HARNESS_SVG_HPP
#define BEAMLOC_HARNESS_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace beamloc::harness {

// Minimal deterministic line-plot writer; no timestamps, fixed float
// formatting, so equal inputs give byte-equal files.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void add_series(std::string label, std::vector<double> x,
                  std::vector<double> y, std::string color);

  /// Forces equal x/y scaling (trajectory overlays).
  void set_equal_aspect(bool on) { equal_aspect_ = on; }

  void write(const std::filesystem::path& path) const;

 private:
  struct Series {
    std::string label;
    std::vector<double> x, y;
    std::string color;
  };
  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  bool equal_aspect_ = false;
};

}  // namespace beamloc::harness

#endif  // BEAMLOC_HARNESS_SVG_HPP

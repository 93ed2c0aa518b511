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

#ifndef BEAMLOC_TESTS_GRADCHECK_HPP
#define BEAMLOC_TESTS_GRADCHECK_HPP

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "beamloc/common/rng.hpp"
#include "beamloc/tensor/tape.hpp"

namespace beamloc::testing {

using tensor::Mat;
using tensor::NodeRef;
using tensor::Tape;

// Builds a scalar loss from differentiable leaves.
using GraphBuilder =
    std::function<NodeRef(Tape&, const std::vector<NodeRef>&)>;

struct GradCheckReport {
  bool ok = true;
  double worst_rel = 0.0;
  std::string where;
};

// Central finite differences, the independent gradient oracle. Every
// coordinate of every input is perturbed by +-h and compared against the
// reverse-mode gradient at relative tolerance `tol` with absolute floor.
inline GradCheckReport gradcheck(const std::vector<Mat>& inputs,
                                 const GraphBuilder& build, double tol = 1e-5,
                                 double h = 1e-5, double floor_abs = 1e-7) {
  GradCheckReport report;

  std::vector<Mat> analytic;
  {
    Tape tape;
    std::vector<NodeRef> leaves;
    leaves.reserve(inputs.size());
    for (const Mat& m : inputs) leaves.push_back(tape.variable(m));
    NodeRef loss = build(tape, leaves);
    tape.backward(loss);
    for (NodeRef leaf : leaves) {
      analytic.push_back(leaf->grad_set
                             ? leaf->grad
                             : Mat::Zero(leaf->rows(), leaf->cols()));
    }
  }

  auto eval = [&](const std::vector<Mat>& points) {
    Tape tape;
    std::vector<NodeRef> leaves;
    leaves.reserve(points.size());
    for (const Mat& m : points) leaves.push_back(tape.variable(m));
    return build(tape, leaves)->value(0, 0);
  };

  std::vector<Mat> work = inputs;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (Eigen::Index c = 0; c < inputs[i].cols(); ++c) {
      for (Eigen::Index r = 0; r < inputs[i].rows(); ++r) {
        const double keep = work[i](r, c);
        work[i](r, c) = keep + h;
        const double up = eval(work);
        work[i](r, c) = keep - h;
        const double down = eval(work);
        work[i](r, c) = keep;
        const double fd = (up - down) / (2.0 * h);
        const double a = analytic[i](r, c);
        const double denom = std::max({std::abs(a), std::abs(fd), floor_abs});
        const double rel = std::abs(a - fd) / denom;
        if (rel > report.worst_rel) {
          report.worst_rel = rel;
          report.where = "input " + std::to_string(i) + " (" +
                         std::to_string(r) + "," + std::to_string(c) + ")";
        }
        if (rel > tol && std::abs(a - fd) > floor_abs) report.ok = false;
      }
    }
  }
  return report;
}

inline Mat random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng,
                         double lo = -1.0, double hi = 1.0) {
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      m(r, c) = rng.uniform(lo, hi);
    }
  }
  return m;
}

/// Random values bounded away from zero (relu/abs kinks break central FD).
inline Mat random_away_from_zero(Eigen::Index rows, Eigen::Index cols,
                                 Rng& rng, double min_abs = 0.15) {
  Mat m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
      m(r, c) = sign * rng.uniform(min_abs, 1.0);
    }
  }
  return m;
}

}  // namespace beamloc::testing

#endif  // BEAMLOC_TESTS_GRADCHECK_HPP

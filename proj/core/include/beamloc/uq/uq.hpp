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

#ifndef BEAMLOC_UQ_UQ_HPP
#define BEAMLOC_UQ_UQ_HPP

#include <Eigen/Dense>
#include <vector>

#include "beamloc/losses/bin_grid.hpp"
#include "beamloc/losses/losses.hpp"

namespace beamloc::uq {

/// Discrete entropy in nats, -sum q log q with 0 log 0 = 0. The vector must
/// be normalized (sum 1 within 1e-9, entries >= 0).
double entropy(const Eigen::VectorXd& q);

/// Gaussian mass discretized onto bin endpoints: p_k proportional to
/// (1/sigma) exp(-(mean - endpoint_k)^2 / (2 sigma^2)), normalized to sum 1.
Eigen::VectorXd discretize_gaussian(double mean, double var,
                                    const Eigen::VectorXd& endpoints);

// How the sparsification curve is built. kEntropyCurve averages the scaled
// entropies themselves (default); kErrorCurve averages the errors that
// remain after removing samples by entropy rank, the conventional variant.
enum class SparsificationVariant { kEntropyCurve, kErrorCurve };

struct SparsificationResult {
  Eigen::VectorXd fractions;  // phi grid, [0, 1) inclusive of 0
  Eigen::VectorXd s_values;   // sparsification curve
  Eigen::VectorXd g_values;   // oracle curve
  double ause = 0.0;          // trapezoid integral of |s - g|
};

struct SparsificationOptions {
  int grid_points = 100;
  double trim_fraction = 0.0;  // drop this top fraction of both sorted vectors
  SparsificationVariant variant = SparsificationVariant::kEntropyCurve;
};

/// Per-sample uncertainty scores against absolute errors. Both vectors are
/// sorted descending internally; the entropy vector is rescaled so its first
/// element equals the largest (post-trim) error.
SparsificationResult sparsification(std::vector<double> entropies,
                                    std::vector<double> abs_errors,
                                    const SparsificationOptions& options = {});

struct AxisAuse {
  double x = 0.0;
  double y = 0.0;
};

struct AuseReport {
  AxisAuse nll;
  AxisAuse rbc;
  SparsificationResult nll_x, nll_y, rbc_x, rbc_y;
};

/// Fair side-by-side AUSE of the two uncertainty heads on one test set.
/// NLL Gaussians are first discretized onto the RbC grid; then the same
/// entropy/error pipeline runs for both heads and both axes.
AuseReport ause_report(const std::vector<losses::GaussianPdf>& nll_pdfs,
                       const std::vector<losses::BinnedPdf>& rbc_pdfs,
                       const std::vector<Eigen::Vector2d>& truths,
                       const losses::BinGrid& grid,
                       const SparsificationOptions& options = {});

}  // namespace beamloc::uq

#endif  // BEAMLOC_UQ_UQ_HPP

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

#ifndef BEAMLOC_LOSSES_LOSSES_HPP
#define BEAMLOC_LOSSES_LOSSES_HPP

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "beamloc/losses/bin_grid.hpp"
#include "beamloc/tensor/tape.hpp"

namespace beamloc::losses {

// Per-snapshot posterior over the UE position.
struct GaussianPdf {
  Eigen::Vector2d mean{0.0, 0.0};  // m
  Eigen::Vector2d var{1.0, 1.0};   // m^2, > 0
};

struct BinnedPdf {
  Eigen::VectorXd q_x;  // probabilities, sum 1
  Eigen::VectorXd q_y;
  double shift_x = 0.0;  // uniform deviation (m)
  double shift_y = 0.0;
};

using PositionPdf = std::variant<GaussianPdf, BinnedPdf>;

struct RbcPenalty {
  double eta = 2.0;  // 1 = taxicab, 2 = euclidean
  double gamma1 = 1.0;
  double gamma2 = 1.0;
};

/// Mean squared position error over the batch.
double mse_loss(const std::vector<Eigen::Vector2d>& predictions,
                const std::vector<Eigen::Vector2d>& truths);

/// Gaussian negative log-likelihood, per-axis variances.
double nll_loss(const std::vector<GaussianPdf>& pdfs,
                const std::vector<Eigen::Vector2d>& truths);

/// Expected-bin-value regression loss with uniform-shift deviation penalty;
/// the penalty norm of the constant deviation vector is sqrt(L) * |shift|.
double rbc_loss(const std::vector<BinnedPdf>& pdfs,
                const std::vector<Eigen::Vector2d>& truths,
                const BinGrid& grid, const RbcPenalty& penalty = {});

/// Expectation decode: sum_k q_k * endpoint_k + shift, per axis.
Eigen::Vector2d rbc_decode(const BinnedPdf& pdf, const BinGrid& grid);

// Graph-building counterparts used by the trainer. Each returns the scalar
// per-sample loss node; the batch loss is the mean over samples.
tensor::NodeRef mse_loss_node(tensor::Tape& tape, tensor::NodeRef prediction,
                              const Eigen::Vector2d& truth);
tensor::NodeRef nll_loss_node(tensor::Tape& tape, tensor::NodeRef mean,
                              tensor::NodeRef var,
                              const Eigen::Vector2d& truth);
tensor::NodeRef rbc_loss_node(tensor::Tape& tape, tensor::NodeRef q_x,
                              tensor::NodeRef q_y, tensor::NodeRef shift_x,
                              tensor::NodeRef shift_y, const BinGrid& grid,
                              const Eigen::Vector2d& truth,
                              const RbcPenalty& penalty = {});

}  // namespace beamloc::losses

#endif  // BEAMLOC_LOSSES_LOSSES_HPP

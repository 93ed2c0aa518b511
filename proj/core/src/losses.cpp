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

#include "beamloc/losses/losses.hpp"

#include <cmath>
#include <stdexcept>

namespace beamloc::losses {

namespace {

constexpr double kQuadratureTol = 1e-9;

void check_batch(std::size_t a, std::size_t b, const char* who) {
  if (a == 0) {
    throw std::invalid_argument(std::string(who) + ": empty batch");
  }
  if (a != b) {
    throw std::invalid_argument(std::string(who) +
                                ": prediction/truth size mismatch");
  }
}

void check_normalized(const Eigen::VectorXd& q, const char* who) {
  if (q.size() == 0 || q.minCoeff() < 0.0 ||
      std::abs(q.sum() - 1.0) > kQuadratureTol) {
    throw std::invalid_argument(std::string(who) +
                                ": probability vector not normalized");
  }
}

}  // namespace

double mse_loss(const std::vector<Eigen::Vector2d>& predictions,
                const std::vector<Eigen::Vector2d>& truths) {
  check_batch(predictions.size(), truths.size(), "mse_loss");
  double total = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    total += (truths[i] - predictions[i]).squaredNorm();
  }
  return total / static_cast<double>(predictions.size());
}

double nll_loss(const std::vector<GaussianPdf>& pdfs,
                const std::vector<Eigen::Vector2d>& truths) {
  check_batch(pdfs.size(), truths.size(), "nll_loss");
  double total = 0.0;
  for (std::size_t i = 0; i < pdfs.size(); ++i) {
    const GaussianPdf& p = pdfs[i];
    if (p.var.x() <= 0.0 || p.var.y() <= 0.0) {
      throw std::invalid_argument("nll_loss: non-positive variance");
    }
    const double ex = truths[i].x() - p.mean.x();
    const double ey = truths[i].y() - p.mean.y();
    total += std::log(p.var.x() * p.var.y()) / 2.0 +
             ex * ex / (2.0 * p.var.x()) + ey * ey / (2.0 * p.var.y());
  }
  return total / (2.0 * static_cast<double>(pdfs.size()));
}

double rbc_loss(const std::vector<BinnedPdf>& pdfs,
                const std::vector<Eigen::Vector2d>& truths,
                const BinGrid& grid, const RbcPenalty& penalty) {
  check_batch(pdfs.size(), truths.size(), "rbc_loss");
  const Eigen::VectorXd lx = grid.endpoints_x();
  const Eigen::VectorXd ly = grid.endpoints_y();
  const double root_lx = std::sqrt(static_cast<double>(grid.l_x));
  const double root_ly = std::sqrt(static_cast<double>(grid.l_y));
  double total = 0.0;
  for (std::size_t i = 0; i < pdfs.size(); ++i) {
    const BinnedPdf& p = pdfs[i];
    check_normalized(p.q_x, "rbc_loss");
    check_normalized(p.q_y, "rbc_loss");
    if (p.q_x.size() != grid.l_x || p.q_y.size() != grid.l_y) {
      throw std::invalid_argument("rbc_loss: pdf does not match the grid");
    }
    const double rx = p.q_x.dot(lx) - truths[i].x() + p.shift_x;
    const double ry = p.q_y.dot(ly) - truths[i].y() + p.shift_y;
    total += std::pow(std::abs(rx), penalty.eta) +
             std::pow(std::abs(ry), penalty.eta) +
             penalty.gamma1 * root_lx * std::abs(p.shift_x) +
             penalty.gamma2 * root_ly * std::abs(p.shift_y);
  }
  return total / (2.0 * static_cast<double>(pdfs.size()));
}

Eigen::Vector2d rbc_decode(const BinnedPdf& pdf, const BinGrid& grid) {
  check_normalized(pdf.q_x, "rbc_decode");
  check_normalized(pdf.q_y, "rbc_decode");
  if (pdf.q_x.size() != grid.l_x || pdf.q_y.size() != grid.l_y) {
    throw std::invalid_argument("rbc_decode: pdf does not match the grid");
  }
  return {pdf.q_x.dot(grid.endpoints_x()) + pdf.shift_x,
          pdf.q_y.dot(grid.endpoints_y()) + pdf.shift_y};
}

tensor::NodeRef mse_loss_node(tensor::Tape& tape, tensor::NodeRef prediction,
                              const Eigen::Vector2d& truth) {
  tensor::NodeRef t = tape.constant(tensor::Mat(truth));
  tensor::NodeRef residual = tape.add(prediction, tape.scale(t, -1.0));
  return tape.sum(tape.square(residual));
}

tensor::NodeRef nll_loss_node(tensor::Tape& tape, tensor::NodeRef mean,
                              tensor::NodeRef var,
                              const Eigen::Vector2d& truth) {
  tensor::NodeRef t = tape.constant(tensor::Mat(truth));
  tensor::NodeRef residual = tape.add(mean, tape.scale(t, -1.0));
  tensor::NodeRef se = tape.square(residual);            // 2x1
  tensor::NodeRef log_var = tape.log(var);               // 2x1
  tensor::NodeRef inv_var = tape.exp(tape.scale(log_var, -1.0));
  // Elementwise products of 1x1 slices via matmul.
  tensor::NodeRef tx = tape.matmul(tape.slice(se, 0, 0, 1, 1),
                                   tape.slice(inv_var, 0, 0, 1, 1));
  tensor::NodeRef ty = tape.matmul(tape.slice(se, 1, 0, 1, 1),
                                   tape.slice(inv_var, 1, 0, 1, 1));
  tensor::NodeRef inner = tape.add(
      tape.scale(tape.sum(log_var), 0.5),
      tape.scale(tape.add(tx, ty), 0.5));
  return tape.scale(inner, 0.5);
}

tensor::NodeRef rbc_loss_node(tensor::Tape& tape, tensor::NodeRef q_x,
                              tensor::NodeRef q_y, tensor::NodeRef shift_x,
                              tensor::NodeRef shift_y, const BinGrid& grid,
                              const Eigen::Vector2d& truth,
                              const RbcPenalty& penalty) {
  tensor::NodeRef lx =
      tape.constant(tensor::Mat(grid.endpoints_x().transpose()));
  tensor::NodeRef ly =
      tape.constant(tensor::Mat(grid.endpoints_y().transpose()));
  tensor::NodeRef ex = tape.matmul(lx, q_x);  // 1x1 expectation
  tensor::NodeRef ey = tape.matmul(ly, q_y);
  tensor::NodeRef rx =
      tape.add(tape.add(ex, tape.constant(-truth.x())), shift_x);
  tensor::NodeRef ry =
      tape.add(tape.add(ey, tape.constant(-truth.y())), shift_y);
  tensor::NodeRef fit =
      tape.add(tape.abs_pow(rx, penalty.eta), tape.abs_pow(ry, penalty.eta));
  tensor::NodeRef pen = tape.add(
      tape.scale(tape.abs_pow(shift_x, 1.0),
                 penalty.gamma1 * std::sqrt(static_cast<double>(grid.l_x))),
      tape.scale(tape.abs_pow(shift_y, 1.0),
                 penalty.gamma2 * std::sqrt(static_cast<double>(grid.l_y))));
  return tape.scale(tape.add(fit, pen), 0.5);
}

}  // namespace beamloc::losses

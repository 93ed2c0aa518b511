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

#include "beamloc/uq/uq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace beamloc::uq {

double entropy(const Eigen::VectorXd& q) {
  if (q.size() == 0 || q.minCoeff() < 0.0 || std::abs(q.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument("entropy: probability vector not normalized");
  }
  double h = 0.0;
  for (Eigen::Index k = 0; k < q.size(); ++k) {
    if (q(k) > 0.0) h -= q(k) * std::log(q(k));
  }
  return h;
}

Eigen::VectorXd discretize_gaussian(double mean, double var,
                                    const Eigen::VectorXd& endpoints) {
  if (var <= 0.0) {
    throw std::invalid_argument("discretize_gaussian: variance must be > 0");
  }
  if (endpoints.size() < 1) {
    throw std::invalid_argument("discretize_gaussian: empty grid");
  }
  const double sigma = std::sqrt(var);
  Eigen::VectorXd p(endpoints.size());
  // Shift by the largest exponent before exponentiating; the common factor
  // cancels in the normalization.
  const Eigen::ArrayXd exponent =
      -(mean - endpoints.array()).square() / (2.0 * var);
  const double peak = exponent.maxCoeff();
  p = ((exponent - peak).exp() / sigma).matrix();
  p /= p.sum();
  return p;
}

namespace {

// Number of leading samples dropped for a fraction of n; floor with a tiny
// guard so exact multiples land on the intended count.
std::size_t drop_count(double fraction, std::size_t n) {
  return static_cast<std::size_t>(fraction * static_cast<double>(n) + 1e-9);
}

// Mean of v[k..end); v sorted descending.
double suffix_mean(const std::vector<double>& v, std::size_t k) {
  if (k >= v.size()) k = v.size() - 1;  // keep at least one sample
  const double total =
      std::accumulate(v.begin() + static_cast<std::ptrdiff_t>(k), v.end(), 0.0);
  return total / static_cast<double>(v.size() - k);
}

}  // namespace

SparsificationResult sparsification(std::vector<double> entropies,
                                    std::vector<double> abs_errors,
                                    const SparsificationOptions& options) {
  if (entropies.size() != abs_errors.size()) {
    throw std::invalid_argument("sparsification: length mismatch");
  }
  if (entropies.size() < 2) {
    throw std::invalid_argument("sparsification: need at least 2 samples");
  }
  if (options.grid_points < 2) {
    throw std::invalid_argument("sparsification: need at least 2 grid points");
  }

  // For the conventional error-based curve the pairing matters: order the
  // errors by their sample's entropy rank before any sorting.
  std::vector<double> errors_by_entropy;
  if (options.variant == SparsificationVariant::kErrorCurve) {
    std::vector<std::size_t> order(entropies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return entropies[a] > entropies[b];
                     });
    errors_by_entropy.reserve(order.size());
    for (std::size_t idx : order) errors_by_entropy.push_back(abs_errors[idx]);
  }

  std::sort(entropies.begin(), entropies.end(), std::greater<>());
  std::sort(abs_errors.begin(), abs_errors.end(), std::greater<>());

  const std::size_t trimmed = drop_count(options.trim_fraction,
                                         entropies.size());
  if (trimmed + 2 > entropies.size()) {
    throw std::invalid_argument("sparsification: trim leaves < 2 samples");
  }
  auto trim = [&](std::vector<double>& v) {
    v.erase(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(trimmed));
  };
  trim(entropies);
  trim(abs_errors);
  if (!errors_by_entropy.empty()) trim(errors_by_entropy);

  // Rescale the entropy curve so it starts at the largest retained error.
  const double xi_max = abs_errors.front();
  const double e_max = entropies.front();
  if (e_max > 0.0) {
    for (double& e : entropies) e *= xi_max / e_max;
  } else {
    for (double& e : entropies) e = (e == e_max) ? xi_max : 0.0;
  }

  const std::size_t n = entropies.size();
  const int points = options.grid_points;
  SparsificationResult result;
  result.fractions.resize(points);
  result.s_values.resize(points);
  result.g_values.resize(points);
  for (int j = 0; j < points; ++j) {
    const double phi = static_cast<double>(j) / points;
    const std::size_t k = drop_count(phi, n);
    result.fractions(j) = phi;
    result.s_values(j) =
        options.variant == SparsificationVariant::kEntropyCurve
            ? suffix_mean(entropies, k)
            : suffix_mean(errors_by_entropy, k);
    result.g_values(j) = suffix_mean(abs_errors, k);
  }

  double area = 0.0;
  for (int j = 1; j < points; ++j) {
    const double a = std::abs(result.s_values(j - 1) - result.g_values(j - 1));
    const double b = std::abs(result.s_values(j) - result.g_values(j));
    area += 0.5 * (a + b) * (result.fractions(j) - result.fractions(j - 1));
  }
  result.ause = area;
  return result;
}

AuseReport ause_report(const std::vector<losses::GaussianPdf>& nll_pdfs,
                       const std::vector<losses::BinnedPdf>& rbc_pdfs,
                       const std::vector<Eigen::Vector2d>& truths,
                       const losses::BinGrid& grid,
                       const SparsificationOptions& options) {
  if (nll_pdfs.empty() || rbc_pdfs.empty()) {
    throw std::invalid_argument("ause_report: both heads must be present");
  }
  if (nll_pdfs.size() != truths.size() || rbc_pdfs.size() != truths.size()) {
    throw std::invalid_argument("ause_report: per-sample counts disagree");
  }
  if (truths.size() < 2) {
    throw std::invalid_argument("ause_report: need at least 2 test samples");
  }

  const Eigen::VectorXd ex = grid.endpoints_x();
  const Eigen::VectorXd ey = grid.endpoints_y();
  std::vector<double> nll_hx, nll_hy, nll_ex, nll_ey;
  std::vector<double> rbc_hx, rbc_hy, rbc_ex, rbc_ey;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    const losses::GaussianPdf& gp = nll_pdfs[i];
    nll_hx.push_back(entropy(discretize_gaussian(gp.mean.x(), gp.var.x(), ex)));
    nll_hy.push_back(entropy(discretize_gaussian(gp.mean.y(), gp.var.y(), ey)));
    nll_ex.push_back(std::abs(gp.mean.x() - truths[i].x()));
    nll_ey.push_back(std::abs(gp.mean.y() - truths[i].y()));

    const losses::BinnedPdf& bp = rbc_pdfs[i];
    const Eigen::Vector2d est = losses::rbc_decode(bp, grid);
    rbc_hx.push_back(entropy(bp.q_x));
    rbc_hy.push_back(entropy(bp.q_y));
    rbc_ex.push_back(std::abs(est.x() - truths[i].x()));
    rbc_ey.push_back(std::abs(est.y() - truths[i].y()));
  }

  AuseReport report;
  report.nll_x = sparsification(nll_hx, nll_ex, options);
  report.nll_y = sparsification(nll_hy, nll_ey, options);
  report.rbc_x = sparsification(rbc_hx, rbc_ex, options);
  report.rbc_y = sparsification(rbc_hy, rbc_ey, options);
  report.nll = {report.nll_x.ause, report.nll_y.ause};
  report.rbc = {report.rbc_x.ause, report.rbc_y.ause};
  return report;
}

}  // namespace beamloc::uq

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

#include "beamloc/fingerprint/fingerprint.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace beamloc::fingerprint {

namespace {

constexpr double kTwoPi = 6.283185307179586;

bool all_rows_identical(const Eigen::MatrixXcd& m) {
  for (Eigen::Index i = 1; i < m.rows(); ++i) {
    if (m.row(i) != m.row(0)) return false;
  }
  return m.rows() > 1;
}

bool all_cols_identical(const Eigen::MatrixXcd& m) {
  for (Eigen::Index j = 1; j < m.cols(); ++j) {
    if (m.col(j) != m.col(0)) return false;
  }
  return m.cols() > 1;
}

// 1/F-scaled inverse DFT matrix, E(f, k) = exp(+j 2 pi f k / F) / F.
// Cached per thread; snapshots in one dataset share the same width.
const Eigen::MatrixXcd& idft_matrix(Eigen::Index f_count) {
  thread_local Eigen::MatrixXcd cached;
  if (cached.rows() != f_count) {
    cached.resize(f_count, f_count);
    for (Eigen::Index f = 0; f < f_count; ++f) {
      for (Eigen::Index k = 0; k < f_count; ++k) {
        cached(f, k) = std::polar(1.0 / static_cast<double>(f_count),
                                  kTwoPi * static_cast<double>(f * k) /
                                      static_cast<double>(f_count));
      }
    }
  }
  return cached;
}

}  // namespace

CleaningReport validate(const simkit::ChannelSnapshot& snapshot,
                        int threshold) {
  CleaningReport report;
  const Eigen::MatrixXcd& h = snapshot.ctf;
  for (Eigen::Index idx = 0; idx < h.size(); ++idx) {
    if (h(idx) != std::complex<double>(0.0, 0.0)) ++report.nonzero_count;
  }
  if (report.nonzero_count < threshold) {
    report.verdict = Verdict::kInvalidSparse;
  } else if (all_rows_identical(h) || all_cols_identical(h)) {
    report.verdict = Verdict::kInvalidStale;
  } else {
    report.verdict = Verdict::kValid;
  }
  return report;
}

Eigen::VectorXd hann_window(int f_count) {
  if (f_count < 2) {
    throw std::invalid_argument("hann_window: need at least 2 points");
  }
  Eigen::VectorXd w(f_count);
  for (int f = 0; f < f_count; ++f) {
    const double s = std::sin(3.141592653589793 * f / f_count);
    w(f) = s * s;
  }
  return w;
}

FingerprintMatrix to_fingerprint(const simkit::ChannelSnapshot& snapshot,
                                 int threshold, bool window) {
  const CleaningReport report = validate(snapshot, threshold);
  if (report.verdict != Verdict::kValid) {
    throw std::invalid_argument(
        "to_fingerprint: snapshot rejected by cleaning (" +
        std::string(report.verdict == Verdict::kInvalidSparse ? "sparse"
                                                              : "stale") +
        ")");
  }
  const Eigen::Index f_count = snapshot.ctf.cols();
  Eigen::MatrixXcd windowed = snapshot.ctf;
  if (window) {
    const Eigen::VectorXd w = hann_window(static_cast<int>(f_count));
    windowed *= w.asDiagonal();
  }
  const Eigen::MatrixXcd g = windowed * idft_matrix(f_count);
  FingerprintMatrix fp;
  fp.amp = g.cwiseAbs();
  return fp;
}

double normalize_dataset(std::vector<simkit::ChannelSnapshot>& snapshots) {
  if (snapshots.empty()) {
    throw std::invalid_argument("normalize_dataset: empty dataset");
  }
  double total = 0.0;
  double entries = 0.0;
  for (const simkit::ChannelSnapshot& s : snapshots) {
    total += s.ctf.squaredNorm();
    entries += static_cast<double>(s.ctf.size());
  }
  if (total <= 0.0) {
    throw std::invalid_argument("normalize_dataset: all-zero dataset");
  }
  const double scale = std::sqrt(entries / total);
  for (simkit::ChannelSnapshot& s : snapshots) s.ctf *= scale;
  return scale;
}

}  // namespace beamloc::fingerprint

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

#ifndef BEAMLOC_COMMON_RNG_HPP
#define BEAMLOC_COMMON_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace beamloc {

// Deterministic random source. All draws go through explicit integer ->
// double conversions instead of std:: distributions, whose output is
// implementation-defined; datasets and checkpoints must be byte-stable
// for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Integer in [lo, hi], inclusive. Rejection sampling, no modulo bias.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

  /// Circularly symmetric complex normal, unit variance.
  std::complex<double> cnormal() {
    const double s = 0.7071067811865476;  // 1/sqrt(2)
    double re = normal();
    double im = normal();
    return {s * re, s * im};
  }

  /// Independent stream derived from this seed and a stream id.
  static Rng fork(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool cached_valid_ = false;
  double cached_ = 0.0;
};

/// splitmix64 finalizer; used for seed mixing.
std::uint64_t mix64(std::uint64_t x);

}  // namespace beamloc

#endif  // BEAMLOC_COMMON_RNG_HPP

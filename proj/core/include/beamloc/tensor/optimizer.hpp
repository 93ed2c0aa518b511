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

#ifndef BEAMLOC_TENSOR_OPTIMIZER_HPP
#define BEAMLOC_TENSOR_OPTIMIZER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "beamloc/tensor/param.hpp"

namespace beamloc::tensor {

/// Raised when a gradient or update turns non-finite; carries diagnostics so
/// the trainer can abort with the last good checkpoint.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& param, long step)
      : std::runtime_error("non-finite gradient in '" + param +
                           "' at step " + std::to_string(step)),
        param_name(param),
        step(step) {}
  std::string param_name;
  long step;
};

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction. Step order and arithmetic are deterministic;
// identical gradient streams produce bit-identical parameters.
class Adam {
 public:
  explicit Adam(const ParamStore& params, AdamConfig cfg = {});

  /// One update from the gradients currently held in `params`.
  void step(ParamStore& params, double lr);

  long steps_taken() const { return t_; }

 private:
  AdamConfig cfg_;
  long t_ = 0;
  std::vector<Mat> m_, v_;
};

/// Plain SGD, kept for ablation.
class Sgd {
 public:
  void step(ParamStore& params, double lr);
  long steps_taken() const { return t_; }

 private:
  long t_ = 0;
};

}  // namespace beamloc::tensor

#endif  // BEAMLOC_TENSOR_OPTIMIZER_HPP

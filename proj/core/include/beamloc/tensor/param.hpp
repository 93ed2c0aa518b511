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

#ifndef BEAMLOC_TENSOR_PARAM_HPP
#define BEAMLOC_TENSOR_PARAM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "beamloc/common/rng.hpp"
#include "beamloc/tensor/tape.hpp"

namespace beamloc::tensor {

struct Parameter {
  std::string name;
  Mat value;
  Mat grad;  // batch-level accumulator
};

// Ordered set of trainable tensors. The order is the serialization order of
// checkpoints, so it must be construction-deterministic.
class ParamStore {
 public:
  std::size_t add(std::string name, Mat init);

  Parameter& operator[](std::size_t i) { return params_[i]; }
  const Parameter& operator[](std::size_t i) const { return params_[i]; }
  std::size_t size() const { return params_.size(); }

  std::size_t index_of(const std::string& name) const;
  Parameter& at(const std::string& name) { return params_[index_of(name)]; }
  const Parameter& at(const std::string& name) const {
    return params_[index_of(name)];
  }

  std::size_t scalar_count() const;
  void zero_grads();

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

 private:
  std::vector<Parameter> params_;
};

/// Scaled-uniform fan-in/fan-out initialization, +-sqrt(6/(fan_in+fan_out)).
Mat glorot_uniform(Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace beamloc::tensor

#endif  // BEAMLOC_TENSOR_PARAM_HPP

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

#ifndef BEAMLOC_ATTNET_NETWORK_HPP
#define BEAMLOC_ATTNET_NETWORK_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "beamloc/tensor/param.hpp"
#include "beamloc/tensor/tape.hpp"

namespace beamloc::attnet {

enum class HeadKind { kMse, kNll, kRbc };

std::string to_string(HeadKind head);
HeadKind head_from_string(const std::string& name);

struct NetworkConfig {
  int rows = 128;  // stacked beam rows of the fingerprint
  int cols = 46;   // delay bins (attention sequence axis)
  int heads = 2;
  HeadKind head = HeadKind::kRbc;
  int l_x = 100, l_y = 100;  // RbC bins per axis
  int hidden1 = 128;         // first head FCNN width
  int hidden2 = 32;          // second head FCNN width (MSE/NLL)
  bool positional_encoding = true;
  int encoder_blocks = 1;
  // Pre-attention layer norm after positional encoding; disabling moves the
  // raw encoded matrix straight into the attention sub-block.
  bool norm_before_attention = true;
  std::uint64_t init_seed = 1;

  int output_dim() const;
  int vectorized_len() const { return rows * cols; }
};

// Node handles into one forward pass; valid while the tape is alive. `vec`
// is the assembled head output (length 2, 4 or l_x + l_y + 2). The named
// views are only set where they apply to the head kind.
struct HeadOutput {
  tensor::NodeRef vec = nullptr;
  tensor::NodeRef mean = nullptr;     // MSE prediction / NLL mean
  tensor::NodeRef var = nullptr;      // NLL variances (post-exp, positive)
  tensor::NodeRef q_x = nullptr;      // RbC probabilities (post-softmax)
  tensor::NodeRef q_y = nullptr;
  tensor::NodeRef shift_x = nullptr;  // RbC uniform deviations
  tensor::NodeRef shift_y = nullptr;
};

// The localization network: positional encoding, layer norm, 2-head
// self-attention with residuals, position-wise FCNN, and a loss-specific
// FCNN head over the vectorized encoder output.
class AttentionNet {
 public:
  explicit AttentionNet(const NetworkConfig& config);

  /// Builds the forward graph for one fingerprint. With `sinks` null the
  /// pass is inference-only; otherwise sinks[i] accumulates the gradient of
  /// parameter i and must match its shape.
  HeadOutput forward(tensor::Tape& tape, const tensor::Mat& input,
                     std::vector<tensor::Mat>* sinks = nullptr) const;

  /// Plain-matrix reference path of the encoder stack (no tape); exercised
  /// against the graph in tests.
  tensor::Mat encoder_reference(const tensor::Mat& input) const;

  /// Fresh gradient sink set shaped like the parameters, zero-filled.
  std::vector<tensor::Mat> make_sinks() const;

  const NetworkConfig& config() const { return config_; }
  tensor::ParamStore& params() { return params_; }
  const tensor::ParamStore& params() const { return params_; }
  const tensor::Mat& positional_matrix() const { return pe_; }

 private:
  struct EncoderIdx {
    std::size_t ln1_g, ln1_b;
    std::vector<std::size_t> wq, wk, wv;
    std::size_t wo;
    std::size_t ln2_g, ln2_b;
    std::size_t ffn_w1, ffn_b1, ffn_w2, ffn_b2;
    std::size_t ln3_g, ln3_b;
  };

  NetworkConfig config_;
  tensor::ParamStore params_;
  std::vector<EncoderIdx> encoders_;
  std::vector<std::size_t> head_idx_;  // fc1.w, fc1.b, fc2.w, fc2.b[, fc3...]
  tensor::Mat pe_;
};

// Reference single-head attention: Z = V * softmax_cols(Q^T K / sqrt(rows)).
tensor::Mat attention_head(const tensor::Mat& x, const tensor::Mat& w_q,
                           const tensor::Mat& w_k, const tensor::Mat& w_v);

// Reference multi-head attention: column-concatenated head outputs times
// the mixing matrix w_o ((heads*cols) x cols).
tensor::Mat multi_head(const tensor::Mat& x,
                       const std::vector<tensor::Mat>& w_q,
                       const std::vector<tensor::Mat>& w_k,
                       const std::vector<tensor::Mat>& w_v,
                       const tensor::Mat& w_o);

// Reference global layer norm over all entries (population variance).
tensor::Mat layer_norm(const tensor::Mat& x, double gamma, double beta);

}  // namespace beamloc::attnet

#endif  // BEAMLOC_ATTNET_NETWORK_HPP

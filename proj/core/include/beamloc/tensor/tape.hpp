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

#ifndef BEAMLOC_TENSOR_TAPE_HPP
#define BEAMLOC_TENSOR_TAPE_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <vector>

namespace beamloc::tensor {

using Mat = Eigen::MatrixXd;

enum class Op : std::uint8_t {
  kLeaf,
  kMatMul,
  kAdd,
  kScale,
  kRelu,
  kSoftmaxCols,
  kLayerNorm,
  kConcatCols,
  kReshape,
  kTranspose,
  kSlice,
  kSum,
  kSquare,
  kLog,
  kExp,
  kAbsPow,
};

// One vertex of the computation graph. Values live in the node except for
// parameter leaves, which alias shared storage; their gradients are routed
// to an external accumulator so a training batch never copies the weights.
struct Node {
  Op op = Op::kLeaf;
  Mat value;
  const Mat* external_value = nullptr;
  Mat grad;
  Mat aux;  // op-specific cache (layer_norm keeps the standardized input)
  Mat* grad_sink = nullptr;
  bool grad_set = false;
  bool needs_grad = false;
  double scalar = 0.0;  // scale factor / abs_pow exponent
  int i0 = 0, j0 = 0;   // slice origin
  std::vector<Node*> parents;

  const Mat& val() const { return external_value ? *external_value : value; }
  Eigen::Index rows() const { return val().rows(); }
  Eigen::Index cols() const { return val().cols(); }
};

using NodeRef = Node*;

// Reverse-mode tape over dense real matrices. Nodes are created in
// topological order by construction; backward() walks them in reverse.
// A tape is single-threaded; independent tapes may run on distinct threads.
class Tape {
 public:
  Tape() = default;
  Tape(const Tape&) = delete;
  Tape& operator=(const Tape&) = delete;

  /// Constant leaf (no gradient tracked).
  NodeRef constant(Mat value);
  NodeRef constant(double value);

  /// Constant leaf aliasing external storage, which must outlive the tape.
  NodeRef constant_view(const Mat& shared_value);

  /// Variable leaf owning its value; gradient kept on the node.
  NodeRef variable(Mat value);

  /// Parameter leaf aliasing shared storage; gradient accumulates into
  /// *sink (which must outlive the tape and match the value's shape).
  NodeRef parameter(const Mat& shared_value, Mat* sink);

  NodeRef matmul(NodeRef a, NodeRef b);
  NodeRef add(NodeRef a, NodeRef b);
  NodeRef scale(NodeRef x, double c);
  NodeRef relu(NodeRef x);
  NodeRef softmax_cols(NodeRef x);
  NodeRef layer_norm(NodeRef x, NodeRef gamma, NodeRef beta);
  NodeRef concat_cols(const std::vector<NodeRef>& xs);
  NodeRef reshape(NodeRef x, Eigen::Index rows, Eigen::Index cols);
  NodeRef transpose(NodeRef x);
  NodeRef slice(NodeRef x, int r0, int c0, int rows, int cols);
  NodeRef sum(NodeRef x);
  NodeRef square(NodeRef x);
  NodeRef log(NodeRef x);
  NodeRef exp(NodeRef x);
  NodeRef abs_pow(NodeRef x, double eta);

  /// Reverse pass from a scalar node. Seeds d(loss)/d(loss) = seed, which
  /// lets a trainer fold the 1/batch factor into the pass. Gradients of
  /// parameter leaves are *added* to their sinks.
  void backward(NodeRef loss, double seed = 1.0);

  /// Drop all nodes (leaves storage to the allocator). Parameter sinks are
  /// untouched.
  void clear();

  std::size_t size() const { return nodes_.size(); }

  static constexpr double kLayerNormEps = 1e-12;

 private:
  NodeRef make(Op op, std::vector<Node*> parents);
  std::vector<std::unique_ptr<Node>> nodes_;
};

}  // namespace beamloc::tensor

#endif  // BEAMLOC_TENSOR_TAPE_HPP

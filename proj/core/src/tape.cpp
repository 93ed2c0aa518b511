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

#include "beamloc/tensor/tape.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace beamloc::tensor {

namespace {

std::string shape_of(const Node* n) {
  return std::to_string(n->rows()) + "x" + std::to_string(n->cols());
}

[[noreturn]] void dim_error(const char* op, const Node* a, const Node* b) {
  throw std::invalid_argument(std::string("tensor: ") + op +
                              ": incompatible shapes " + shape_of(a) +
                              " and " + shape_of(b));
}

// Gradient contribution into a node. First writer assigns, later writers
// accumulate; parameter leaves go straight to their sink.
template <typename Expr>
void accumulate(Node* n, const Expr& contribution) {
  if (!n->needs_grad) return;
  if (n->grad_sink) {
    n->grad_sink->noalias() += contribution;
    return;
  }
  if (!n->grad_set) {
    n->grad.resize(n->rows(), n->cols());
    n->grad.noalias() = contribution;
    n->grad_set = true;
  } else {
    n->grad.noalias() += contribution;
  }
}

}  // namespace

NodeRef Tape::make(Op op, std::vector<Node*> parents) {
  auto node = std::make_unique<Node>();
  node->op = op;
  node->parents = std::move(parents);
  for (const Node* p : node->parents) {
    if (p->needs_grad) {
      node->needs_grad = true;
      break;
    }
  }
  nodes_.push_back(std::move(node));
  return nodes_.back().get();
}

NodeRef Tape::constant(Mat value) {
  NodeRef n = make(Op::kLeaf, {});
  n->value = std::move(value);
  return n;
}

NodeRef Tape::constant(double value) {
  Mat m(1, 1);
  m(0, 0) = value;
  return constant(std::move(m));
}

NodeRef Tape::constant_view(const Mat& shared_value) {
  NodeRef n = make(Op::kLeaf, {});
  n->external_value = &shared_value;
  return n;
}

NodeRef Tape::variable(Mat value) {
  NodeRef n = make(Op::kLeaf, {});
  n->value = std::move(value);
  n->needs_grad = true;
  return n;
}

NodeRef Tape::parameter(const Mat& shared_value, Mat* sink) {
  if (sink == nullptr ||
      sink->rows() != shared_value.rows() ||
      sink->cols() != shared_value.cols()) {
    throw std::invalid_argument("tensor: parameter: sink missing or misshaped");
  }
  NodeRef n = make(Op::kLeaf, {});
  n->external_value = &shared_value;
  n->grad_sink = sink;
  n->needs_grad = true;
  return n;
}

NodeRef Tape::matmul(NodeRef a, NodeRef b) {
  if (a->cols() != b->rows()) dim_error("matmul", a, b);
  NodeRef n = make(Op::kMatMul, {a, b});
  n->value.noalias() = a->val() * b->val();
  return n;
}

NodeRef Tape::add(NodeRef a, NodeRef b) {
  if (a->rows() != b->rows() || a->cols() != b->cols()) dim_error("add", a, b);
  NodeRef n = make(Op::kAdd, {a, b});
  n->value = a->val() + b->val();
  return n;
}

NodeRef Tape::scale(NodeRef x, double c) {
  NodeRef n = make(Op::kScale, {x});
  n->scalar = c;
  n->value = c * x->val();
  return n;
}

NodeRef Tape::relu(NodeRef x) {
  NodeRef n = make(Op::kRelu, {x});
  n->value = x->val().cwiseMax(0.0);
  return n;
}

NodeRef Tape::softmax_cols(NodeRef x) {
  NodeRef n = make(Op::kSoftmaxCols, {x});
  const Mat& v = x->val();
  n->value.resize(v.rows(), v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double m = v.col(j).maxCoeff();
    n->value.col(j) = (v.col(j).array() - m).exp();
    n->value.col(j) /= n->value.col(j).sum();
  }
  return n;
}

NodeRef Tape::layer_norm(NodeRef x, NodeRef gamma, NodeRef beta) {
  if (gamma->rows() != 1 || gamma->cols() != 1 || beta->rows() != 1 ||
      beta->cols() != 1) {
    throw std::invalid_argument("tensor: layer_norm: gamma/beta must be 1x1");
  }
  NodeRef n = make(Op::kLayerNorm, {x, gamma, beta});
  const Mat& v = x->val();
  const double count = static_cast<double>(v.size());
  const double mu = v.mean();
  const double var = (v.array() - mu).square().sum() / count;
  const double inv_sigma = 1.0 / std::sqrt(var + kLayerNormEps);
  n->aux = (v.array() - mu).matrix() * inv_sigma;  // standardized input
  n->scalar = inv_sigma;
  n->value = gamma->val()(0, 0) * n->aux.array() + beta->val()(0, 0);
  return n;
}

NodeRef Tape::concat_cols(const std::vector<NodeRef>& xs) {
  if (xs.empty()) throw std::invalid_argument("tensor: concat_cols: no inputs");
  Eigen::Index rows = xs.front()->rows();
  Eigen::Index cols = 0;
  for (const NodeRef x : xs) {
    if (x->rows() != rows) dim_error("concat_cols", xs.front(), x);
    cols += x->cols();
  }
  NodeRef n = make(Op::kConcatCols, {xs.begin(), xs.end()});
  n->value.resize(rows, cols);
  Eigen::Index at = 0;
  for (const NodeRef x : xs) {
    n->value.middleCols(at, x->cols()) = x->val();
    at += x->cols();
  }
  return n;
}

NodeRef Tape::reshape(NodeRef x, Eigen::Index rows, Eigen::Index cols) {
  if (rows * cols != x->rows() * x->cols()) {
    throw std::invalid_argument(
        "tensor: reshape: size mismatch, have " + shape_of(x) + ", want " +
        std::to_string(rows) + "x" + std::to_string(cols));
  }
  NodeRef n = make(Op::kReshape, {x});
  n->value = Mat(x->val().reshaped(rows, cols));  // column-major relayout
  return n;
}

NodeRef Tape::transpose(NodeRef x) {
  NodeRef n = make(Op::kTranspose, {x});
  n->value = x->val().transpose();
  return n;
}

NodeRef Tape::slice(NodeRef x, int r0, int c0, int rows, int cols) {
  if (r0 < 0 || c0 < 0 || rows < 1 || cols < 1 || r0 + rows > x->rows() ||
      c0 + cols > x->cols()) {
    throw std::invalid_argument(
        "tensor: slice: block [" + std::to_string(r0) + "," +
        std::to_string(c0) + "]+" + std::to_string(rows) + "x" +
        std::to_string(cols) + " outside " + shape_of(x));
  }
  NodeRef n = make(Op::kSlice, {x});
  n->i0 = r0;
  n->j0 = c0;
  n->value = x->val().block(r0, c0, rows, cols);
  return n;
}

NodeRef Tape::sum(NodeRef x) {
  NodeRef n = make(Op::kSum, {x});
  n->value.resize(1, 1);
  n->value(0, 0) = x->val().sum();
  return n;
}

NodeRef Tape::square(NodeRef x) {
  NodeRef n = make(Op::kSquare, {x});
  n->value = x->val().array().square();
  return n;
}

NodeRef Tape::log(NodeRef x) {
  NodeRef n = make(Op::kLog, {x});
  n->value = x->val().array().log();
  return n;
}

NodeRef Tape::exp(NodeRef x) {
  NodeRef n = make(Op::kExp, {x});
  n->value = x->val().array().exp();
  return n;
}

NodeRef Tape::abs_pow(NodeRef x, double eta) {
  if (eta < 1.0) throw std::invalid_argument("tensor: abs_pow: eta < 1");
  NodeRef n = make(Op::kAbsPow, {x});
  n->scalar = eta;
  n->value = x->val().array().abs().pow(eta);
  return n;
}

void Tape::backward(NodeRef loss, double seed) {
  if (loss->rows() != 1 || loss->cols() != 1) {
    throw std::invalid_argument("tensor: backward: loss must be scalar, got " +
                                shape_of(loss));
  }
  for (auto& n : nodes_) {
    n->grad_set = false;
  }
  loss->grad.resize(1, 1);
  loss->grad(0, 0) = seed;
  loss->grad_set = true;
  if (loss->grad_sink) {  // loss directly on a parameter leaf
    loss->grad_sink->noalias() += loss->grad;
  }

  for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) {
    Node* n = it->get();
    if (!n->grad_set || !n->needs_grad || n->op == Op::kLeaf) continue;
    const Mat& g = n->grad;
    switch (n->op) {
      case Op::kMatMul: {
        Node* a = n->parents[0];
        Node* b = n->parents[1];
        if (a->needs_grad) accumulate(a, g * b->val().transpose());
        if (b->needs_grad) accumulate(b, a->val().transpose() * g);
        break;
      }
      case Op::kAdd:
        accumulate(n->parents[0], g);
        accumulate(n->parents[1], g);
        break;
      case Op::kScale:
        accumulate(n->parents[0], n->scalar * g);
        break;
      case Op::kRelu:
        accumulate(n->parents[0],
                   (n->parents[0]->val().array() > 0.0)
                       .select(g.array(), 0.0)
                       .matrix());
        break;
      case Op::kSoftmaxCols: {
        Node* x = n->parents[0];
        if (!x->needs_grad) break;
        Mat dx(n->rows(), n->cols());
        for (Eigen::Index j = 0; j < n->cols(); ++j) {
          const auto y = n->value.col(j).array();
          const auto gj = g.col(j).array();
          const double dot = (y * gj).sum();
          dx.col(j) = (y * (gj - dot)).matrix();
        }
        accumulate(x, dx);
        break;
      }
      case Op::kLayerNorm: {
        Node* x = n->parents[0];
        Node* gamma = n->parents[1];
        Node* beta = n->parents[2];
        const double gm = gamma->val()(0, 0);
        const double count = static_cast<double>(n->value.size());
        const double g_mean = g.sum() / count;
        const double gx_mean = (g.array() * n->aux.array()).sum() / count;
        if (gamma->needs_grad) {
          Mat dg(1, 1);
          dg(0, 0) = (g.array() * n->aux.array()).sum();
          accumulate(gamma, dg);
        }
        if (beta->needs_grad) {
          Mat db(1, 1);
          db(0, 0) = g.sum();
          accumulate(beta, db);
        }
        if (x->needs_grad) {
          accumulate(x, (gm * n->scalar) *
                            (g.array() - g_mean - n->aux.array() * gx_mean)
                                .matrix());
        }
        break;
      }
      case Op::kConcatCols: {
        Eigen::Index at = 0;
        for (Node* p : n->parents) {
          if (p->needs_grad) accumulate(p, g.middleCols(at, p->cols()));
          at += p->cols();
        }
        break;
      }
      case Op::kReshape:
        accumulate(n->parents[0],
                   g.reshaped(n->parents[0]->rows(), n->parents[0]->cols()));
        break;
      case Op::kTranspose:
        accumulate(n->parents[0], g.transpose());
        break;
      case Op::kSlice: {
        Node* p = n->parents[0];
        if (!p->needs_grad) break;
        // Scatter into the parent block; other entries receive zero.
        if (p->grad_sink) {
          p->grad_sink->block(n->i0, n->j0, n->rows(), n->cols()).noalias() += g;
        } else {
          if (!p->grad_set) {
            p->grad.setZero(p->rows(), p->cols());
            p->grad_set = true;
          }
          p->grad.block(n->i0, n->j0, n->rows(), n->cols()).noalias() += g;
        }
        break;
      }
      case Op::kSum:
        accumulate(n->parents[0],
                   Mat::Constant(n->parents[0]->rows(), n->parents[0]->cols(),
                                 g(0, 0)));
        break;
      case Op::kSquare:
        accumulate(n->parents[0],
                   (2.0 * n->parents[0]->val().array() * g.array()).matrix());
        break;
      case Op::kLog:
        accumulate(n->parents[0],
                   (g.array() / n->parents[0]->val().array()).matrix());
        break;
      case Op::kExp:
        accumulate(n->parents[0], (g.array() * n->value.array()).matrix());
        break;
      case Op::kAbsPow: {
        Node* x = n->parents[0];
        if (!x->needs_grad) break;
        const double eta = n->scalar;
        const auto xv = x->val().array();
        // d|x|^eta/dx = eta*|x|^(eta-1)*sign(x); subgradient 0 at x = 0.
        Mat dx = (eta * xv.abs().pow(eta - 1.0) * xv.sign() * g.array()).matrix();
        accumulate(x, dx);
        break;
      }
      case Op::kLeaf:
        break;
    }
  }
}

void Tape::clear() { nodes_.clear(); }

}  // namespace beamloc::tensor

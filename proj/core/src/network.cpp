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

#include "beamloc/attnet/network.hpp"

#include <cmath>
#include <stdexcept>

#include "beamloc/attnet/positional.hpp"

namespace beamloc::attnet {

using tensor::Mat;
using tensor::NodeRef;
using tensor::Tape;

std::string to_string(HeadKind head) {
  switch (head) {
    case HeadKind::kMse:
      return "mse";
    case HeadKind::kNll:
      return "nll";
    case HeadKind::kRbc:
      return "rbc";
  }
  return "mse";
}

HeadKind head_from_string(const std::string& name) {
  if (name == "mse") return HeadKind::kMse;
  if (name == "nll") return HeadKind::kNll;
  if (name == "rbc") return HeadKind::kRbc;
  throw std::invalid_argument("unknown head '" + name +
                              "' (expected mse|nll|rbc)");
}

int NetworkConfig::output_dim() const {
  switch (head) {
    case HeadKind::kMse:
      return 2;
    case HeadKind::kNll:
      return 4;
    case HeadKind::kRbc:
      return l_x + l_y + 2;
  }
  return 2;
}

AttentionNet::AttentionNet(const NetworkConfig& config) : config_(config) {
  if (config_.rows < 2 || config_.cols < 1 || config_.heads < 1 ||
      config_.encoder_blocks < 1) {
    throw std::invalid_argument("AttentionNet: degenerate configuration");
  }
  if (config_.head == HeadKind::kRbc && (config_.l_x < 2 || config_.l_y < 2)) {
    throw std::invalid_argument("AttentionNet: RbC needs >= 2 bins per axis");
  }
  Rng rng(config_.init_seed);
  const int n = config_.rows;
  const int f = config_.cols;

  auto weight = [&](Eigen::Index r, Eigen::Index c) {
    return tensor::glorot_uniform(r, c, rng);
  };
  auto one = [] {
    Mat m(1, 1);
    m(0, 0) = 1.0;
    return m;
  };

  for (int b = 0; b < config_.encoder_blocks; ++b) {
    const std::string prefix = "enc" + std::to_string(b) + ".";
    EncoderIdx idx;
    idx.ln1_g = params_.add(prefix + "ln1.gamma", one());
    idx.ln1_b = params_.add(prefix + "ln1.beta", Mat::Zero(1, 1));
    for (int h = 0; h < config_.heads; ++h) {
      const std::string hp = prefix + "head" + std::to_string(h) + ".";
      idx.wq.push_back(params_.add(hp + "wq", weight(n, n)));
      idx.wk.push_back(params_.add(hp + "wk", weight(n, n)));
      idx.wv.push_back(params_.add(hp + "wv", weight(n, n)));
    }
    idx.wo = params_.add(prefix + "wo", weight(config_.heads * f, f));
    idx.ln2_g = params_.add(prefix + "ln2.gamma", one());
    idx.ln2_b = params_.add(prefix + "ln2.beta", Mat::Zero(1, 1));
    idx.ffn_w1 = params_.add(prefix + "ffn.w1", weight(f, n));
    idx.ffn_b1 = params_.add(prefix + "ffn.b1", Mat::Zero(f, f));
    idx.ffn_w2 = params_.add(prefix + "ffn.w2", weight(n, f));
    idx.ffn_b2 = params_.add(prefix + "ffn.b2", Mat::Zero(n, f));
    idx.ln3_g = params_.add(prefix + "ln3.gamma", one());
    idx.ln3_b = params_.add(prefix + "ln3.beta", Mat::Zero(1, 1));
    encoders_.push_back(std::move(idx));
  }

  const int vec_len = config_.vectorized_len();
  head_idx_.push_back(params_.add("fc1.w", weight(config_.hidden1, vec_len)));
  head_idx_.push_back(params_.add("fc1.b", Mat::Zero(config_.hidden1, 1)));
  if (config_.head == HeadKind::kRbc) {
    head_idx_.push_back(
        params_.add("fc2.w", weight(config_.output_dim(), config_.hidden1)));
    head_idx_.push_back(params_.add("fc2.b", Mat::Zero(config_.output_dim(), 1)));
  } else {
    head_idx_.push_back(
        params_.add("fc2.w", weight(config_.hidden2, config_.hidden1)));
    head_idx_.push_back(params_.add("fc2.b", Mat::Zero(config_.hidden2, 1)));
    head_idx_.push_back(
        params_.add("fc3.w", weight(config_.output_dim(), config_.hidden2)));
    head_idx_.push_back(params_.add("fc3.b", Mat::Zero(config_.output_dim(), 1)));
  }

  pe_ = positional_encoding_matrix(n, f);
}

std::vector<Mat> AttentionNet::make_sinks() const {
  std::vector<Mat> sinks;
  sinks.reserve(params_.size());
  for (const tensor::Parameter& p : params_) {
    sinks.push_back(Mat::Zero(p.value.rows(), p.value.cols()));
  }
  return sinks;
}

HeadOutput AttentionNet::forward(Tape& tape, const Mat& input,
                                 std::vector<Mat>* sinks) const {
  if (input.rows() != config_.rows || input.cols() != config_.cols) {
    throw std::invalid_argument(
        "AttentionNet::forward: input is " + std::to_string(input.rows()) +
        "x" + std::to_string(input.cols()) + ", configured for " +
        std::to_string(config_.rows) + "x" + std::to_string(config_.cols));
  }
  if (sinks && sinks->size() != params_.size()) {
    throw std::invalid_argument("AttentionNet::forward: sink set mismatch");
  }
  auto p = [&](std::size_t i) -> NodeRef {
    return sinks ? tape.parameter(params_[i].value, &(*sinks)[i])
                 : tape.constant_view(params_[i].value);
  };
  auto vconcat = [&](const std::vector<NodeRef>& parts) -> NodeRef {
    std::vector<NodeRef> t;
    t.reserve(parts.size());
    for (NodeRef part : parts) t.push_back(tape.transpose(part));
    return tape.transpose(tape.concat_cols(t));
  };

  const double att_scale = 1.0 / std::sqrt(static_cast<double>(config_.rows));
  NodeRef cur = tape.constant_view(input);

  for (const EncoderIdx& idx : encoders_) {
    NodeRef att_in = cur;
    if (config_.positional_encoding) {
      att_in = tape.add(att_in, tape.constant_view(pe_));
    }
    if (config_.norm_before_attention) {
      att_in = tape.layer_norm(att_in, p(idx.ln1_g), p(idx.ln1_b));
    }
    std::vector<NodeRef> heads;
    heads.reserve(idx.wq.size());
    for (std::size_t h = 0; h < idx.wq.size(); ++h) {
      NodeRef q = tape.matmul(p(idx.wq[h]), att_in);
      NodeRef k = tape.matmul(p(idx.wk[h]), att_in);
      NodeRef v = tape.matmul(p(idx.wv[h]), att_in);
      NodeRef a = tape.scale(tape.matmul(tape.transpose(q), k), att_scale);
      heads.push_back(tape.matmul(v, tape.softmax_cols(a)));
    }
    NodeRef mixed = tape.matmul(tape.concat_cols(heads), p(idx.wo));
    NodeRef residual = tape.add(cur, mixed);
    NodeRef normed = tape.layer_norm(residual, p(idx.ln2_g), p(idx.ln2_b));
    NodeRef ffn = tape.add(
        tape.matmul(p(idx.ffn_w2),
                    tape.relu(tape.add(tape.matmul(p(idx.ffn_w1), normed),
                                       p(idx.ffn_b1)))),
        p(idx.ffn_b2));
    cur = tape.layer_norm(tape.add(ffn, normed), p(idx.ln3_g), p(idx.ln3_b));
  }

  NodeRef flat = tape.reshape(cur, config_.vectorized_len(), 1);
  NodeRef a1 = tape.relu(
      tape.add(tape.matmul(p(head_idx_[0]), flat), p(head_idx_[1])));

  HeadOutput out;
  if (config_.head == HeadKind::kRbc) {
    NodeRef raw = tape.add(tape.matmul(p(head_idx_[2]), a1), p(head_idx_[3]));
    out.q_x = tape.softmax_cols(tape.slice(raw, 0, 0, config_.l_x, 1));
    out.q_y = tape.softmax_cols(tape.slice(raw, config_.l_x, 0, config_.l_y, 1));
    out.shift_x = tape.slice(raw, config_.l_x + config_.l_y, 0, 1, 1);
    out.shift_y = tape.slice(raw, config_.l_x + config_.l_y + 1, 0, 1, 1);
    out.vec = vconcat({out.q_x, out.q_y, out.shift_x, out.shift_y});
  } else {
    NodeRef a2 = tape.relu(
        tape.add(tape.matmul(p(head_idx_[2]), a1), p(head_idx_[3])));
    NodeRef raw = tape.add(tape.matmul(p(head_idx_[4]), a2), p(head_idx_[5]));
    if (config_.head == HeadKind::kMse) {
      out.vec = raw;
      out.mean = raw;
    } else {
      out.mean = tape.slice(raw, 0, 0, 2, 1);
      out.var = tape.exp(tape.slice(raw, 2, 0, 2, 1));
      out.vec = vconcat({out.mean, out.var});
    }
  }
  return out;
}

Mat layer_norm(const Mat& x, double gamma, double beta) {
  const double count = static_cast<double>(x.size());
  const double mu = x.mean();
  const double var = (x.array() - mu).square().sum() / count;
  const double inv_sigma = 1.0 / std::sqrt(var + Tape::kLayerNormEps);
  return (gamma * (x.array() - mu) * inv_sigma + beta).matrix();
}

Mat attention_head(const Mat& x, const Mat& w_q, const Mat& w_k,
                   const Mat& w_v) {
  const Mat q = w_q * x;
  const Mat k = w_k * x;
  const Mat v = w_v * x;
  Mat a = (q.transpose() * k) / std::sqrt(static_cast<double>(x.rows()));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    const double m = a.col(j).maxCoeff();
    a.col(j) = (a.col(j).array() - m).exp();
    a.col(j) /= a.col(j).sum();
  }
  return v * a;
}

Mat multi_head(const Mat& x, const std::vector<Mat>& w_q,
               const std::vector<Mat>& w_k, const std::vector<Mat>& w_v,
               const Mat& w_o) {
  if (w_q.size() != w_k.size() || w_q.size() != w_v.size() || w_q.empty()) {
    throw std::invalid_argument("multi_head: inconsistent head weights");
  }
  Mat z_tl(x.rows(), static_cast<Eigen::Index>(w_q.size()) * x.cols());
  for (std::size_t h = 0; h < w_q.size(); ++h) {
    z_tl.middleCols(static_cast<Eigen::Index>(h) * x.cols(), x.cols()) =
        attention_head(x, w_q[h], w_k[h], w_v[h]);
  }
  if (w_o.rows() != z_tl.cols() || w_o.cols() != x.cols()) {
    throw std::invalid_argument("multi_head: w_o shape mismatch");
  }
  return z_tl * w_o;
}

Mat AttentionNet::encoder_reference(const Mat& input) const {
  Mat cur = input;
  for (const EncoderIdx& idx : encoders_) {
    Mat att_in = cur;
    if (config_.positional_encoding) att_in += pe_;
    if (config_.norm_before_attention) {
      att_in = attnet::layer_norm(att_in, params_[idx.ln1_g].value(0, 0),
                                  params_[idx.ln1_b].value(0, 0));
    }
    std::vector<Mat> wq, wk, wv;
    for (std::size_t h = 0; h < idx.wq.size(); ++h) {
      wq.push_back(params_[idx.wq[h]].value);
      wk.push_back(params_[idx.wk[h]].value);
      wv.push_back(params_[idx.wv[h]].value);
    }
    const Mat mixed = multi_head(att_in, wq, wk, wv, params_[idx.wo].value);
    const Mat normed =
        attnet::layer_norm(cur + mixed, params_[idx.ln2_g].value(0, 0),
                           params_[idx.ln2_b].value(0, 0));
    const Mat ffn =
        params_[idx.ffn_w2].value *
            (params_[idx.ffn_w1].value * normed + params_[idx.ffn_b1].value)
                .cwiseMax(0.0) +
        params_[idx.ffn_b2].value;
    cur = attnet::layer_norm(ffn + normed, params_[idx.ln3_g].value(0, 0),
                             params_[idx.ln3_b].value(0, 0));
  }
  return cur;
}

}  // namespace beamloc::attnet

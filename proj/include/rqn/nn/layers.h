#ifndef RQN_NN_LAYERS_H_
#define RQN_NN_LAYERS_H_

#include <string>
#include <vector>

#include "rqn/nn/graph.h"
#include "rqn/nn/tensor.h"

namespace rqn::nn {

// Dense layer y = x W^T + b with W stored out x in.
class Linear {
 public:
  Linear() = default;
  Linear(const std::string& name, Eigen::Index in, Eigen::Index out, Rng& rng);

  Eigen::Index in_dim() const { return weight_.value().cols(); }
  Eigen::Index out_dim() const { return weight_.value().rows(); }

  Var forward(Graph& g, Var x);
  Matrix forward(const Matrix& x) const;

  Parameter& weight() { return weight_; }
  Parameter& bias() { return bias_; }
  const Parameter& weight() const { return weight_; }
  const Parameter& bias() const { return bias_; }
  std::vector<Parameter*> parameters() { return {&weight_, &bias_}; }

 private:
  Parameter weight_;
  Parameter bias_;
};

// GRU cell with gate order (reset, update, candidate):
//   r = sigmoid(x W_ir + b_ir + h W_hr + b_hr)
//   z = sigmoid(x W_iz + b_iz + h W_hz + b_hz)
//   n = tanh(x W_in + b_in + r * (h W_hn + b_hn))
//   h' = (1 - z) * n + z * h
class GruCell {
 public:
  GruCell() = default;
  GruCell(const std::string& name, Eigen::Index in, Eigen::Index hidden, Rng& rng);

  Eigen::Index in_dim() const { return w_ih_.value().cols(); }
  Eigen::Index hidden_dim() const { return w_hh_.value().cols(); }

  Var forward(Graph& g, Var x, Var h);
  Matrix forward(const Matrix& x, const Matrix& h) const;

  Parameter& w_ih() { return w_ih_; }
  Parameter& w_hh() { return w_hh_; }
  Parameter& b_ih() { return b_ih_; }
  Parameter& b_hh() { return b_hh_; }
  std::vector<Parameter*> parameters() { return {&w_ih_, &w_hh_, &b_ih_, &b_hh_}; }

 private:
  void check(Eigen::Index x_cols, Eigen::Index h_cols, Eigen::Index x_rows, Eigen::Index h_rows) const;

  Parameter w_ih_;  // 3H x in
  Parameter w_hh_;  // 3H x H
  Parameter b_ih_;  // 1 x 3H
  Parameter b_hh_;  // 1 x 3H
};

Matrix relu(const Matrix& x);

// Copies every value of `from` into `to`; both lists must align.
void copy_parameters(const std::vector<Parameter*>& from, const std::vector<Parameter*>& to);

}  // namespace rqn::nn

#endif  // RQN_NN_LAYERS_H_

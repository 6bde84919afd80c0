#include "rqn/nn/layers.h"

#include <cmath>

namespace rqn::nn {

Linear::Linear(const std::string& name, Eigen::Index in, Eigen::Index out, Rng& rng)
    : weight_(name + ".weight", uniform_init(out, in, in, rng)),
      bias_(name + ".bias", uniform_init(1, out, in, rng)) {}

Var Linear::forward(Graph& g, Var x) {
  if (x.cols() != in_dim()) {
    throw ShapeError("linear '" + weight_.name() + "': expected " + std::to_string(in_dim()) +
                     " inputs, got " + std::to_string(x.cols()));
  }
  return g.add_row(g.matmul_nt(x, g.param(weight_)), g.param(bias_));
}

Matrix Linear::forward(const Matrix& x) const {
  if (x.cols() != in_dim()) {
    throw ShapeError("linear '" + weight_.name() + "': expected " + std::to_string(in_dim()) +
                     " inputs, got " + std::to_string(x.cols()));
  }
  Matrix y = x * weight_.value().transpose();
  y.rowwise() += bias_.value().row(0);
  return y;
}

GruCell::GruCell(const std::string& name, Eigen::Index in, Eigen::Index hidden, Rng& rng)
    : w_ih_(name + ".w_ih", uniform_init(3 * hidden, in, in, rng)),
      w_hh_(name + ".w_hh", uniform_init(3 * hidden, hidden, hidden, rng)),
      b_ih_(name + ".b_ih", uniform_init(1, 3 * hidden, in, rng)),
      b_hh_(name + ".b_hh", uniform_init(1, 3 * hidden, hidden, rng)) {}

void GruCell::check(Eigen::Index x_cols, Eigen::Index h_cols, Eigen::Index x_rows,
                    Eigen::Index h_rows) const {
  if (x_cols != in_dim() || h_cols != hidden_dim() || x_rows != h_rows) {
    throw ShapeError("gru '" + w_ih_.name() + "': input/hidden shape mismatch");
  }
}

Var GruCell::forward(Graph& g, Var x, Var h) {
  check(x.cols(), h.cols(), x.rows(), h.rows());
  const Eigen::Index hd = hidden_dim();
  Var gx = g.add_row(g.matmul_nt(x, g.param(w_ih_)), g.param(b_ih_));
  Var gh = g.add_row(g.matmul_nt(h, g.param(w_hh_)), g.param(b_hh_));
  Var r = g.sigmoid(g.slice_cols(gx, 0, hd) + g.slice_cols(gh, 0, hd));
  Var z = g.sigmoid(g.slice_cols(gx, hd, hd) + g.slice_cols(gh, hd, hd));
  Var n = g.tanh(g.slice_cols(gx, 2 * hd, hd) + r * g.slice_cols(gh, 2 * hd, hd));
  // (1 - z) * n + z * h
  return g.affine(z, -1.0, 1.0) * n + z * h;
}

Matrix GruCell::forward(const Matrix& x, const Matrix& h) const {
  check(x.cols(), h.cols(), x.rows(), h.rows());
  const Eigen::Index hd = hidden_dim();
  Matrix gx = x * w_ih_.value().transpose();
  gx.rowwise() += b_ih_.value().row(0);
  Matrix gh = h * w_hh_.value().transpose();
  gh.rowwise() += b_hh_.value().row(0);
  auto sigmoid = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  const Matrix r = (gx.leftCols(hd) + gh.leftCols(hd)).unaryExpr(sigmoid);
  const Matrix z = (gx.middleCols(hd, hd) + gh.middleCols(hd, hd)).unaryExpr(sigmoid);
  const Matrix n =
      (gx.rightCols(hd).array() + r.array() * gh.rightCols(hd).array()).tanh().matrix();
  return ((1.0 - z.array()) * n.array() + z.array() * h.array()).matrix();
}

Matrix relu(const Matrix& x) { return x.cwiseMax(0.0); }

void copy_parameters(const std::vector<Parameter*>& from, const std::vector<Parameter*>& to) {
  if (from.size() != to.size()) throw ShapeError("copy_parameters: parameter lists differ");
  for (size_t i = 0; i < from.size(); ++i) to[i]->assign(from[i]->value());
}

}  // namespace rqn::nn

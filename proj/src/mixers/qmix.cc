#include "rqn/mixers/qmix.h"

#include <cmath>

namespace rqn::mixers {

using nn::Matrix;
using nn::Var;

QmixMixer::QmixMixer(int num_agents, int state_dim, nn::Rng& rng)
    : num_agents_(num_agents),
      state_dim_(state_dim),
      hyper_w1_("qmix.hyper_w1", state_dim, num_agents * kEmbed, rng),
      hyper_b1_("qmix.hyper_b1", state_dim, kEmbed, rng),
      hyper_w2_("qmix.hyper_w2", state_dim, kEmbed, rng),
      hyper_v1_("qmix.hyper_v1", state_dim, kEmbed, rng),
      hyper_v2_("qmix.hyper_v2", kEmbed, 1, rng) {}

Var QmixMixer::mix(nn::Graph& g, Var q, Var state) {
  if (q.cols() != num_agents_ || state.cols() != state_dim_ || q.rows() != state.rows()) {
    throw nn::ShapeError("qmix: chosen values or state have the wrong shape");
  }
  Var w1 = g.abs(hyper_w1_.forward(g, state));
  Var b1 = hyper_b1_.forward(g, state);
  Var hidden = g.elu(g.add(g.rowwise_matmul(q, w1, num_agents_, kEmbed), b1));
  Var w2 = g.abs(hyper_w2_.forward(g, state));
  Var v = hyper_v2_.forward(g, g.relu(hyper_v1_.forward(g, state)));
  return g.add(g.sum_cols(g.mul(hidden, w2)), v);
}

double QmixMixer::mix(std::span<const double> q, std::span<const double> state) const {
  if (static_cast<int>(q.size()) != num_agents_ || static_cast<int>(state.size()) != state_dim_) {
    throw nn::ShapeError("qmix: chosen values or state have the wrong shape");
  }
  return mix(Matrix(Eigen::Map<const Matrix>(q.data(), 1, num_agents_)),
             Matrix(Eigen::Map<const Matrix>(state.data(), 1, state_dim_)))(0, 0);
}

Matrix QmixMixer::mix(const Matrix& q, const Matrix& state) const {
  if (q.cols() != num_agents_ || state.cols() != state_dim_ || q.rows() != state.rows()) {
    throw nn::ShapeError("qmix: chosen values or state have the wrong shape");
  }
  const Matrix w1 = hyper_w1_.forward(state).cwiseAbs();
  Matrix pre = hyper_b1_.forward(state);
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    Eigen::Map<const Matrix> w1r(w1.row(r).data(), num_agents_, kEmbed);
    pre.row(r) += q.row(r) * w1r;
  }
  const Matrix hidden = pre.unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
  const Matrix w2 = hyper_w2_.forward(state).cwiseAbs();
  Matrix out = hyper_v2_.forward(nn::relu(hyper_v1_.forward(state)));
  out.col(0) += hidden.cwiseProduct(w2).rowwise().sum();
  return out;
}

std::vector<nn::Parameter*> QmixMixer::parameters() {
  std::vector<nn::Parameter*> ps;
  for (nn::Linear* l : {&hyper_w1_, &hyper_b1_, &hyper_w2_, &hyper_v1_, &hyper_v2_}) {
    for (auto* p : l->parameters()) ps.push_back(p);
  }
  return ps;
}

}  // namespace rqn::mixers

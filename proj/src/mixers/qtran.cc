#include "rqn/mixers/qtran.h"

#include <stdexcept>

namespace rqn::mixers {

using nn::Matrix;
using nn::Var;

QtranHeads::QtranHeads(int hidden_dim, int num_actions, nn::Rng& rng)
    : hidden_dim_(hidden_dim),
      num_actions_(num_actions),
      joint1_("qtran.joint1", hidden_dim + num_actions, kHidden, rng),
      joint2_("qtran.joint2", kHidden, kHidden, rng),
      joint3_("qtran.joint3", kHidden, 1, rng),
      value1_("qtran.value1", hidden_dim, kHidden, rng),
      value2_("qtran.value2", kHidden, kHidden, rng),
      value3_("qtran.value3", kHidden, 1, rng) {}

Var QtranHeads::joint_q(nn::Graph& g, Var hidden_sum, Var action_sum) {
  const Var parts[] = {hidden_sum, action_sum};
  Var x = g.concat_cols(parts);
  x = g.relu(joint1_.forward(g, x));
  x = g.relu(joint2_.forward(g, x));
  return joint3_.forward(g, x);
}

Matrix QtranHeads::joint_q(const Matrix& hidden_sum, const Matrix& action_sum) const {
  Matrix x(hidden_sum.rows(), hidden_sum.cols() + action_sum.cols());
  x << hidden_sum, action_sum;
  return joint3_.forward(nn::relu(joint2_.forward(nn::relu(joint1_.forward(x)))));
}

Var QtranHeads::state_value(nn::Graph& g, Var hidden_sum) {
  Var x = g.relu(value1_.forward(g, hidden_sum));
  x = g.relu(value2_.forward(g, x));
  return value3_.forward(g, x);
}

Matrix QtranHeads::state_value(const Matrix& hidden_sum) const {
  return value3_.forward(nn::relu(value2_.forward(nn::relu(value1_.forward(hidden_sum)))));
}

std::vector<nn::Parameter*> QtranHeads::parameters() {
  std::vector<nn::Parameter*> ps;
  for (nn::Linear* l : {&joint1_, &joint2_, &joint3_, &value1_, &value2_, &value3_}) {
    for (auto* p : l->parameters()) ps.push_back(p);
  }
  return ps;
}

QtranLossVars qtran_losses(nn::Graph& g, std::span<const QtranLossInputs> steps, QtranWeights w) {
  if (steps.empty()) throw std::invalid_argument("qtran_losses: no samples");
  double count = 0.0;
  Var td, opt, nopt;
  bool first = true;
  for (const QtranLossInputs& s : steps) {
    count += (s.mask.array() > 0.0).cast<double>().sum();
    const Eigen::Index rows = s.mask.size();
    // L_td
    Var td_t = g.masked_sq_error(s.joint_taken, s.td_target, s.mask);
    // L_opt: target of zero for sum Q(abar) - Q_jt(abar) + V
    Var opt_pred = g.sub(g.add(s.sum_q_greedy, s.state_value), g.constant(Matrix(s.joint_greedy)));
    Var opt_t = g.masked_sq_error(opt_pred, nn::Vector::Zero(rows), s.mask);
    // L_nopt on the clamped expression
    Var nopt_pred = g.sub(g.add(s.sum_q_taken, s.state_value), g.constant(s.joint_taken.value()));
    Var nopt_t = g.masked_sq_error(g.clamp_max(nopt_pred, 0.0), nn::Vector::Zero(rows), s.mask);
    if (first) {
      td = td_t;
      opt = opt_t;
      nopt = nopt_t;
      first = false;
    } else {
      td = g.add(td, td_t);
      opt = g.add(opt, opt_t);
      nopt = g.add(nopt, nopt_t);
    }
  }
  if (count <= 0.0) throw std::invalid_argument("qtran_losses: every sample is masked");
  QtranLossVars out;
  out.td = g.affine(td, 1.0 / count, 0.0);
  out.opt = g.affine(opt, 1.0 / count, 0.0);
  out.nopt = g.affine(nopt, 1.0 / count, 0.0);
  out.total = g.add(out.td, g.add(g.affine(out.opt, w.opt, 0.0), g.affine(out.nopt, w.nopt, 0.0)));
  return out;
}

QtranLossValues qtran_losses(std::span<const QtranSample> samples, QtranWeights w) {
  if (samples.empty()) throw std::invalid_argument("qtran_losses: no samples");
  const Eigen::Index n = static_cast<Eigen::Index>(samples.size());
  Matrix joint(n, 1), sum_taken(n, 1), sum_greedy(n, 1), value(n, 1);
  nn::Vector joint_greedy(n), target(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const QtranSample& s = samples[static_cast<size_t>(k)];
    joint(k, 0) = s.joint_taken;
    sum_taken(k, 0) = s.sum_q_taken;
    sum_greedy(k, 0) = s.sum_q_greedy;
    value(k, 0) = s.state_value;
    joint_greedy(k) = s.joint_greedy;
    target(k) = s.td_target;
  }
  nn::Graph g;
  const QtranLossInputs in{.joint_taken = g.constant(joint),
                           .sum_q_taken = g.constant(sum_taken),
                           .sum_q_greedy = g.constant(sum_greedy),
                           .state_value = g.constant(value),
                           .joint_greedy = joint_greedy,
                           .td_target = target,
                           .mask = nn::Vector::Ones(n)};
  const QtranLossVars v = qtran_losses(g, std::span<const QtranLossInputs>(&in, 1), w);
  return {v.td.item(), v.opt.item(), v.nopt.item(), v.total.item()};
}

}  // namespace rqn::mixers

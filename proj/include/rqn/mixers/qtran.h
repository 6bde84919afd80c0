#ifndef RQN_MIXERS_QTRAN_H_
#define RQN_MIXERS_QTRAN_H_

#include <span>
#include <vector>

#include "rqn/nn/graph.h"
#include "rqn/nn/layers.h"

namespace rqn::mixers {

// QTRAN-base heads over a permutation-invariant team summary: the sum of the
// agents' GRU hidden states, plus (for the joint head) the sum of their
// action one-hots.
class QtranHeads {
 public:
  static constexpr int kHidden = 64;

  QtranHeads() = default;
  QtranHeads(int hidden_dim, int num_actions, nn::Rng& rng);

  int hidden_dim() const { return hidden_dim_; }
  int num_actions() const { return num_actions_; }

  // Q_jt(tau, a): hidden_sum B x H, action_sum B x A -> B x 1.
  nn::Var joint_q(nn::Graph& g, nn::Var hidden_sum, nn::Var action_sum);
  nn::Matrix joint_q(const nn::Matrix& hidden_sum, const nn::Matrix& action_sum) const;
  // V_jt(tau): B x H -> B x 1.
  nn::Var state_value(nn::Graph& g, nn::Var hidden_sum);
  nn::Matrix state_value(const nn::Matrix& hidden_sum) const;

  std::vector<nn::Parameter*> parameters();

 private:
  int hidden_dim_ = 0;
  int num_actions_ = 0;
  nn::Linear joint1_, joint2_, joint3_;
  nn::Linear value1_, value2_, value3_;
};

struct QtranWeights {
  double opt = 1.0;
  double nopt = 1.0;
};

// Per-sample quantities entering the QTRAN-base objective. Values in the
// "detached" fields act as constants.
struct QtranLossInputs {
  nn::Var joint_taken;       // Q_jt(tau, a), B x 1, regressed to td_target
  nn::Var sum_q_taken;       // sum_i Q_i(tau_i, a_i), B x 1
  nn::Var sum_q_greedy;      // sum_i Q_i(tau_i, abar_i), B x 1
  nn::Var state_value;       // V_jt(tau), B x 1
  nn::Vector joint_greedy;   // Q_jt(tau, abar), detached
  nn::Vector td_target;
  nn::Vector mask;
};

struct QtranLossVars {
  nn::Var td, opt, nopt, total;
};

// Masked means over every valid sample of all steps:
//   L_td   = (Q_jt(a) - y)^2
//   L_opt  = (sum Q_i(abar) - Q_jt(abar) + V)^2
//   L_nopt = min(sum Q_i(a) - Q_jt(a) + V, 0)^2     (Q_jt(a) detached)
// total = L_td + w.opt * L_opt + w.nopt * L_nopt.
QtranLossVars qtran_losses(nn::Graph& g, std::span<const QtranLossInputs> steps, QtranWeights w = {});

struct QtranLossValues {
  double td = 0.0, opt = 0.0, nopt = 0.0, total = 0.0;
};

// Plain-value form over a flat list of samples.
struct QtranSample {
  double joint_taken = 0.0;
  double sum_q_taken = 0.0;
  double sum_q_greedy = 0.0;
  double joint_greedy = 0.0;
  double state_value = 0.0;
  double td_target = 0.0;
};
QtranLossValues qtran_losses(std::span<const QtranSample> samples, QtranWeights w = {});

}  // namespace rqn::mixers

#endif  // RQN_MIXERS_QTRAN_H_

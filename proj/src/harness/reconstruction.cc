#include "rqn/harness/reconstruction.h"

#include <cmath>

#include "rqn/mixers/rqn.h"

namespace rqn::harness {

using training::Algorithm;

double ReconstructionTable::max_abs_error(const std::vector<std::vector<double>>& reference) const {
  if (reference.size() != values.size()) throw std::invalid_argument("reconstruction: reference size differs");
  double worst = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    if (reference[i].size() != values[i].size()) throw std::invalid_argument("reconstruction: reference size differs");
    for (size_t j = 0; j < values[i].size(); ++j) worst = std::max(worst, std::abs(values[i][j] - reference[i][j]));
  }
  return worst;
}

ReconstructionTable reconstruct_qtot(const training::Learner& learner, envs::Environment& env) {
  if (env.name() != "matrix") throw envs::EnvError("reconstruct_qtot needs the matrix game, got " + env.name());
  const envs::DecPomdpSpec& spec = env.spec();
  if (spec.num_agents != 2) throw envs::EnvError("reconstruct_qtot needs two agents");
  const int n = spec.num_agents;
  const int actions = spec.num_actions;

  const envs::StepResult first = env.reset(0);
  const agents::AgentNetwork& agent = learner.agent();
  const std::vector<int> none(static_cast<size_t>(n), -1);
  const auto out = agent.forward(agent.make_inputs(first.observations, none), agent.initial_hidden(n));
  const nn::Matrix state = Eigen::Map<const nn::Matrix>(first.state.data(), 1, static_cast<Eigen::Index>(first.state.size()));
  const nn::Matrix hidden_sum = out.hidden.colwise().sum();

  ReconstructionTable table;
  table.values.assign(static_cast<size_t>(actions), std::vector<double>(static_cast<size_t>(actions), 0.0));
  for (int a0 = 0; a0 < actions; ++a0) {
    for (int a1 = 0; a1 < actions; ++a1) {
      const std::vector<double> q = {out.q(0, a0), out.q(1, a1)};
      double v = 0.0;
      switch (learner.algorithm()) {
        case Algorithm::kVdn:
          v = q[0] + q[1];
          break;
        case Algorithm::kRqn: {
          const std::vector<double> phi = learner.rqn()->factors(mixers::rqn_features({q}));
          v = mixers::rqn_mix(q, phi);
          break;
        }
        case Algorithm::kQmix:
          v = learner.qmix()->mix(nn::Matrix(Eigen::Map<const nn::Matrix>(q.data(), 1, n)), state)(0, 0);
          break;
        case Algorithm::kQtran: {
          nn::Matrix counts = nn::Matrix::Zero(1, actions);
          counts(0, a0) += 1.0;
          counts(0, a1) += 1.0;
          v = learner.qtran()->joint_q(hidden_sum, counts)(0, 0);
          break;
        }
      }
      table.values[static_cast<size_t>(a0)][static_cast<size_t>(a1)] = v;
    }
  }
  return table;
}

bool is_additive(const ReconstructionTable& table, double tol) {
  // r_i = entry(i, 0), c_j = entry(0, j) - entry(0, 0)
  const int k = table.size();
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const double fit = table.at(i, 0) + table.at(0, j) - table.at(0, 0);
      if (std::abs(table.at(i, j) - fit) > tol) return false;
    }
  }
  return true;
}

}  // namespace rqn::harness

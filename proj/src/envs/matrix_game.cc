#include "rqn/envs/matrix_game.h"

namespace rqn::envs {

double matrix_payoff(int a0, int a1) {
  if (a0 < 0 || a0 > 2 || a1 < 0 || a1 > 2) throw EnvError("matrix_payoff: action outside {A, B, C}");
  return kMatrixPayoff[static_cast<size_t>(a0)][static_cast<size_t>(a1)];
}

MatrixGame::MatrixGame()
    : Environment(DecPomdpSpec{.num_agents = 2,
                               .num_actions = 3,
                               .obs_dim = 1,
                               .state_dim = 1,
                               .episode_limit = 1,
                               .gamma = 1.0}) {}

void MatrixGame::do_reset(std::uint64_t /*seed*/) {}

bool MatrixGame::do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) {
  const double r = matrix_payoff(joint_action[0], joint_action[1]);
  agent_rewards[0] = r / 2.0;
  agent_rewards[1] = r / 2.0;
  return true;
}

std::vector<double> MatrixGame::observation(int /*agent*/) const { return {1.0}; }

std::vector<double> MatrixGame::state() const { return {1.0}; }

}  // namespace rqn::envs

#include "rqn/envs/switch_env.h"

namespace rqn::envs {

Switch::Switch(SwitchConfig config)
    : Environment(DecPomdpSpec{.num_agents = 2,
                               .num_actions = kNumMoveActions,
                               .obs_dim = 3,
                               .state_dim = 6,
                               .episode_limit = config.episode_limit,
                               .gamma = 0.99}),
      config_(config) {}

bool Switch::is_wall(Cell c) {
  if (c.row < 0 || c.row >= kRows || c.col < 0 || c.col >= kCols) return true;
  // corridor occupies the middle row of columns 2..4
  return c.row != 1 && c.col >= 2 && c.col <= 4;
}

Cell Switch::start(int agent) { return agent == 0 ? Cell{0, 0} : Cell{0, kCols - 1}; }

void Switch::do_reset(std::uint64_t /*seed*/) {
  pos_ = {start(0), start(1)};
  arrived_ = {false, false};
}

void Switch::set_positions(Cell a0, Cell a1) {
  if (is_wall(a0) || is_wall(a1) || a0 == a1) throw EnvError("switch: invalid placement");
  pos_ = {a0, a1};
  arrived_ = {a0 == goal(0), a1 == goal(1)};
}

bool Switch::do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) {
  for (int i = 0; i < 2; ++i) {
    const size_t k = static_cast<size_t>(i);
    if (arrived_[k]) continue;
    agent_rewards[k] += config_.step_penalty;
    const Cell target = moved(pos_[k], joint_action[k]);
    if (!is_wall(target) && !(target == pos_[1 - k])) pos_[k] = target;
    if (pos_[k] == goal(i)) {
      arrived_[k] = true;
      agent_rewards[k] += config_.goal_reward;
    }
  }
  return arrived_[0] && arrived_[1];
}

std::vector<double> Switch::observation(int agent) const {
  const Cell c = pos_[static_cast<size_t>(agent)];
  return {normalized(c.row, kRows), normalized(c.col, kCols), arrived_[static_cast<size_t>(agent)] ? 1.0 : 0.0};
}

std::vector<double> Switch::state() const {
  return {normalized(pos_[0].row, kRows), normalized(pos_[0].col, kCols), arrived_[0] ? 1.0 : 0.0,
          normalized(pos_[1].row, kRows), normalized(pos_[1].col, kCols), arrived_[1] ? 1.0 : 0.0};
}

}  // namespace rqn::envs

#ifndef RQN_ENVS_SWITCH_ENV_H_
#define RQN_ENVS_SWITCH_ENV_H_

#include <array>
#include <string>

#include "rqn/envs/environment.h"
#include "rqn/envs/grid.h"

namespace rqn::envs {

struct SwitchConfig {
  double goal_reward = 5.0;
  double step_penalty = -0.1;  // per agent still travelling
  int episode_limit = 50;
};

// Two agents in rooms at either end of a 3x7 map joined by a one-cell-wide
// corridor must trade places. Agents that reach their goal stay there.
class Switch final : public Environment {
 public:
  static constexpr int kRows = 3;
  static constexpr int kCols = 7;

  explicit Switch(SwitchConfig config = {});
  std::string name() const override { return "switch"; }

  static bool is_wall(Cell c);
  static Cell start(int agent);
  static Cell goal(int agent) { return start(1 - agent); }

  const std::array<Cell, 2>& positions() const { return pos_; }
  const std::array<bool, 2>& arrived() const { return arrived_; }
  void set_positions(Cell a0, Cell a1);

 protected:
  void do_reset(std::uint64_t seed) override;
  bool do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) override;
  std::vector<double> observation(int agent) const override;
  std::vector<double> state() const override;

 private:
  SwitchConfig config_;
  std::array<Cell, 2> pos_{};
  std::array<bool, 2> arrived_{};
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_SWITCH_ENV_H_

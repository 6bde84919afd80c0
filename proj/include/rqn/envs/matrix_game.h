#ifndef RQN_ENVS_MATRIX_GAME_H_
#define RQN_ENVS_MATRIX_GAME_H_

#include <array>
#include <string>

#include "rqn/envs/environment.h"

namespace rqn::envs {

// Non-monotonic one-step cooperative game with actions {A, B, C}.
inline constexpr std::array<std::array<double, 3>, 3> kMatrixPayoff = {{
    {8.0, -12.0, -12.0},
    {-12.0, 0.0, 0.0},
    {-12.0, 0.0, 0.0},
}};

double matrix_payoff(int a0, int a1);

// Two agents, three actions, a single step. Observations and state are a
// constant 1 so every agent sees the same (empty) history.
class MatrixGame final : public Environment {
 public:
  MatrixGame();
  std::string name() const override { return "matrix"; }

 protected:
  void do_reset(std::uint64_t seed) override;
  bool do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) override;
  std::vector<double> observation(int agent) const override;
  std::vector<double> state() const override;
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_MATRIX_GAME_H_

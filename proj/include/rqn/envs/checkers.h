#ifndef RQN_ENVS_CHECKERS_H_
#define RQN_ENVS_CHECKERS_H_

#include <array>
#include <string>
#include <vector>

#include "rqn/envs/environment.h"
#include "rqn/envs/grid.h"

namespace rqn::envs {

struct CheckersConfig {
  double apple_reward = 1.0;
  double lemon_reward = -1.0;
  double step_penalty = -0.01;  // per agent
  int episode_limit = 50;
};

// 3x8 board with apples and lemons laid out in a checkerboard over columns
// 1..7. Both agents start in column 0; fruit is eaten on entry.
class Checkers final : public Environment {
 public:
  static constexpr int kRows = 3;
  static constexpr int kCols = 8;
  enum Fruit : int { kNone = 0, kApple = 1, kLemon = 2 };

  explicit Checkers(CheckersConfig config = {});
  std::string name() const override { return "checkers"; }

  Fruit fruit_at(Cell c) const;
  int apples_left() const;
  const std::array<Cell, 2>& positions() const { return pos_; }
  void set_positions(Cell a0, Cell a1);
  void set_fruit(Cell c, Fruit f);

 protected:
  void do_reset(std::uint64_t seed) override;
  bool do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) override;
  std::vector<double> observation(int agent) const override;
  std::vector<double> state() const override;

 private:
  static bool inside(Cell c);

  CheckersConfig config_;
  std::array<Cell, 2> pos_{};
  std::vector<Fruit> board_;
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_CHECKERS_H_

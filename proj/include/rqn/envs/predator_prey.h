#ifndef RQN_ENVS_PREDATOR_PREY_H_
#define RQN_ENVS_PREDATOR_PREY_H_

#include <string>
#include <vector>

#include "rqn/envs/environment.h"
#include "rqn/envs/grid.h"
#include "rqn/nn/tensor.h"

namespace rqn::envs {

struct PredatorPreyConfig {
  int grid_size = 7;
  int num_predators = 2;
  int num_prey = 1;
  double capture_penalty = 0.0;  // credited to every agent per failed capture attempt
  double step_penalty = -0.01;   // per agent, every step
  double capture_reward = 5.0;   // per agent, per prey caught
  int episode_limit = 50;
  int view = 3;  // side of the square observation window, odd
};

// Predators hunt randomly moving prey. Actions: the five grid moves plus a
// dedicated capture action. A prey is caught when at least two predators
// adjacent to it choose capture on the same step.
class PredatorPrey final : public Environment {
 public:
  static constexpr int kCapture = kNumMoveActions;

  explicit PredatorPrey(PredatorPreyConfig config);
  std::string name() const override { return "predator_prey"; }
  const PredatorPreyConfig& config() const { return config_; }

  const std::vector<Cell>& predators() const { return predators_; }
  const std::vector<Cell>& prey() const { return prey_; }
  const std::vector<bool>& prey_alive() const { return alive_; }
  int prey_remaining() const;

  // Places entities explicitly (for tests); prey motion still uses the RNG
  // seeded by the last reset.
  void set_positions(std::vector<Cell> predators, std::vector<Cell> prey);

  // Best achievable return from the current state if the prey stood still:
  // shortest-path distance for two predators to flank the prey, plus the
  // capture step. Requires exactly one live prey.
  double optimal_return() const;

 protected:
  void do_reset(std::uint64_t seed) override;
  bool do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) override;
  std::vector<double> observation(int agent) const override;
  std::vector<double> state() const override;

 private:
  bool inside(Cell c) const;
  bool occupied(Cell c) const;

  PredatorPreyConfig config_;
  std::vector<Cell> predators_;
  std::vector<Cell> prey_;
  std::vector<bool> alive_;
  nn::Rng rng_;
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_PREDATOR_PREY_H_

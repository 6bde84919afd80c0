#ifndef RQN_AGENTS_POLICY_H_
#define RQN_AGENTS_POLICY_H_

#include <cstdint>
#include <span>

#include "rqn/nn/tensor.h"

namespace rqn::agents {

// Linear decay from `start` to `finish` over `anneal_steps` environment
// steps, constant afterwards.
struct EpsilonSchedule {
  double start = 1.0;
  double finish = 0.05;
  std::int64_t anneal_steps = 50000;

  double at(std::int64_t env_step) const;
};

// Index of the largest value, lowest index on ties.
int greedy_action(std::span<const double> q);

// Epsilon-greedy choice over an agent's own Q-vector: with probability
// epsilon a uniformly random action, otherwise greedy_action(q).
int select_action(std::span<const double> q, double epsilon, nn::Rng& rng);

}  // namespace rqn::agents

#endif  // RQN_AGENTS_POLICY_H_

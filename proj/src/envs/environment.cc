#include "rqn/envs/environment.h"

#include <cmath>
#include <numeric>

namespace rqn::envs {

void DecPomdpSpec::validate() const {
  if (num_agents < 1) throw EnvError("spec: need at least one agent");
  if (num_actions < 1) throw EnvError("spec: need at least one action");
  if (obs_dim < 1 || state_dim < 1) throw EnvError("spec: observation/state dimension must be positive");
  if (episode_limit < 1) throw EnvError("spec: episode limit must be positive");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw EnvError("spec: gamma must lie in [0, 1]");
}

Environment::Environment(DecPomdpSpec spec) : spec_(spec) { spec_.validate(); }

StepResult Environment::snapshot() const {
  StepResult r;
  r.observations.reserve(static_cast<size_t>(spec_.num_agents));
  for (int i = 0; i < spec_.num_agents; ++i) r.observations.push_back(observation(i));
  r.state = state();
  r.agent_rewards.assign(static_cast<size_t>(spec_.num_agents), 0.0);
  return r;
}

StepResult Environment::reset(std::uint64_t seed) {
  steps_ = 0;
  done_ = false;
  do_reset(seed);
  return snapshot();
}

StepResult Environment::step(std::span<const int> joint_action) {
  if (done_) throw EnvError(name() + ": step after terminal");
  if (static_cast<int>(joint_action.size()) != spec_.num_agents) {
    throw EnvError(name() + ": expected one action per agent");
  }
  for (int a : joint_action) {
    if (a < 0 || a >= spec_.num_actions) throw EnvError(name() + ": action index out of range");
  }
  std::vector<double> rewards(static_cast<size_t>(spec_.num_agents), 0.0);
  const bool finished = do_step(joint_action, rewards);
  ++steps_;
  StepResult r = snapshot();
  r.agent_rewards = std::move(rewards);
  r.reward = std::accumulate(r.agent_rewards.begin(), r.agent_rewards.end(), 0.0);
  if (!std::isfinite(r.reward)) throw EnvError(name() + ": non-finite reward");
  r.terminal = finished || steps_ >= spec_.episode_limit;
  r.time_limit = !finished && r.terminal;
  done_ = r.terminal;
  return r;
}

}  // namespace rqn::envs

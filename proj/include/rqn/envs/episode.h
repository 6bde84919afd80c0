#ifndef RQN_ENVS_EPISODE_H_
#define RQN_ENVS_EPISODE_H_

#include <span>
#include <vector>

#include "rqn/envs/environment.h"

namespace rqn::envs {

// One complete trajectory. Observations and states are stored flat and hold
// length()+1 entries (the final post-step snapshot is kept so truncated
// episodes can bootstrap); actions and rewards hold length() entries. The
// last step is the single terminal index.
struct EpisodeRecord {
  int num_agents = 0;
  int obs_dim = 0;
  int state_dim = 0;
  std::vector<double> observations;  // (len+1) x N x obs_dim
  std::vector<double> states;        // (len+1) x state_dim
  std::vector<int> actions;          // len x N
  std::vector<double> rewards;       // len
  // True when the final step ended the task itself; false when it was cut
  // off by the step limit (and the last transition still bootstraps).
  bool terminated = false;

  EpisodeRecord() = default;
  EpisodeRecord(const DecPomdpSpec& spec, const StepResult& first);

  int length() const { return static_cast<int>(rewards.size()); }
  std::span<const double> obs(int t, int agent) const;
  std::span<const double> state(int t) const;
  std::span<const int> joint_action(int t) const;
  double total_reward() const;

  void append(std::span<const int> joint_action, const StepResult& result);
  // Throws EnvError if the per-step fields disagree in length.
  void validate() const;
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_EPISODE_H_

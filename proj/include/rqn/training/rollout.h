#ifndef RQN_TRAINING_ROLLOUT_H_
#define RQN_TRAINING_ROLLOUT_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "rqn/agents/agent_network.h"
#include "rqn/envs/environment.h"
#include "rqn/envs/episode.h"

namespace rqn::training {

struct Rollout {
  envs::EpisodeRecord episode;
  // chosen_q[t][i]: agent i's value of the action it took at step t.
  std::vector<std::vector<double>> chosen_q;
};

// Exploration rate for the given step of the episode (0-based).
using EpsilonFn = std::function<double(int step)>;

// Plays one episode with decentralised epsilon-greedy action selection: each
// agent acts on its own observation history only. An empty `epsilon` plays
// greedily and never touches `rng`.
Rollout run_episode(envs::Environment& env, const agents::AgentNetwork& agent, std::uint64_t env_seed,
                    const EpsilonFn& epsilon, nn::Rng& rng);

}  // namespace rqn::training

#endif  // RQN_TRAINING_ROLLOUT_H_

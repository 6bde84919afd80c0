#ifndef RQN_HARNESS_EVALUATION_H_
#define RQN_HARNESS_EVALUATION_H_

#include <cstdint>
#include <vector>

#include "rqn/agents/agent_network.h"
#include "rqn/envs/environment.h"
#include "rqn/mixers/qmix.h"
#include "rqn/mixers/rqn.h"

namespace rqn::harness {

inline constexpr int kEvalEpisodes = 20;
inline constexpr int kEvalInterval = 100;

// Seed of the k-th evaluation episode of a run.
std::uint64_t eval_episode_seed(std::uint64_t run_seed, int k);

// Mean undiscounted team return over `episodes` greedy episodes. Only `env`
// changes state; the networks are read-only.
double evaluate(const agents::AgentNetwork& agent, envs::Environment& env, std::uint64_t run_seed,
                int episodes = kEvalEpisodes);

// Estimation factors on one greedy episode played from `probe_seed`.
std::vector<double> phi_probe(const agents::AgentNetwork& agent, const mixers::RqnEstimator& estimator,
                              envs::Environment& env, std::uint64_t probe_seed);

// Checks on random (q, state) points that raising any single Q_i never
// lowers the mixed value.
bool qmix_monotonicity_probe(const mixers::QmixMixer& mixer, std::uint64_t seed, int samples = 64);

}  // namespace rqn::harness

#endif  // RQN_HARNESS_EVALUATION_H_

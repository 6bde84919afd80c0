#include "rqn/envs/episode.h"

#include <numeric>

namespace rqn::envs {

namespace {

void push_snapshot(EpisodeRecord& ep, const StepResult& r) {
  if (static_cast<int>(r.observations.size()) != ep.num_agents) {
    throw EnvError("episode: observation count differs from agent count");
  }
  for (const auto& o : r.observations) {
    if (static_cast<int>(o.size()) != ep.obs_dim) throw EnvError("episode: observation width mismatch");
    ep.observations.insert(ep.observations.end(), o.begin(), o.end());
  }
  if (static_cast<int>(r.state.size()) != ep.state_dim) throw EnvError("episode: state width mismatch");
  ep.states.insert(ep.states.end(), r.state.begin(), r.state.end());
}

}  // namespace

EpisodeRecord::EpisodeRecord(const DecPomdpSpec& spec, const StepResult& first)
    : num_agents(spec.num_agents), obs_dim(spec.obs_dim), state_dim(spec.state_dim) {
  push_snapshot(*this, first);
}

std::span<const double> EpisodeRecord::obs(int t, int agent) const {
  const size_t at = (static_cast<size_t>(t) * static_cast<size_t>(num_agents) + static_cast<size_t>(agent)) *
                    static_cast<size_t>(obs_dim);
  return {observations.data() + at, static_cast<size_t>(obs_dim)};
}

std::span<const double> EpisodeRecord::state(int t) const {
  return {states.data() + static_cast<size_t>(t) * static_cast<size_t>(state_dim), static_cast<size_t>(state_dim)};
}

std::span<const int> EpisodeRecord::joint_action(int t) const {
  return {actions.data() + static_cast<size_t>(t) * static_cast<size_t>(num_agents), static_cast<size_t>(num_agents)};
}

double EpisodeRecord::total_reward() const { return std::accumulate(rewards.begin(), rewards.end(), 0.0); }

void EpisodeRecord::append(std::span<const int> joint_action, const StepResult& result) {
  if (static_cast<int>(joint_action.size()) != num_agents) throw EnvError("episode: joint action width mismatch");
  actions.insert(actions.end(), joint_action.begin(), joint_action.end());
  rewards.push_back(result.reward);
  push_snapshot(*this, result);
  terminated = result.terminal && !result.time_limit;
}

void EpisodeRecord::validate() const {
  const size_t len = rewards.size();
  if (len == 0) throw EnvError("episode: empty");
  const size_t n = static_cast<size_t>(num_agents);
  if (actions.size() != len * n || observations.size() != (len + 1) * n * static_cast<size_t>(obs_dim) ||
      states.size() != (len + 1) * static_cast<size_t>(state_dim)) {
    throw EnvError("episode: per-step fields have inconsistent lengths");
  }
}

}  // namespace rqn::envs

#include "rqn/training/replay_buffer.h"

#include <algorithm>
#include <stdexcept>

namespace rqn::training {

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer: capacity must be positive");
}

void ReplayBuffer::store_episode(envs::EpisodeRecord episode) {
  episode.validate();
  if (episodes_.size() == capacity_) episodes_.pop_front();
  episodes_.push_back(std::move(episode));
  ++total_stored_;
}

std::vector<size_t> ReplayBuffer::sample_indices(size_t batch_size, nn::Rng& rng) const {
  if (!can_sample(batch_size)) throw std::invalid_argument("replay buffer: not enough episodes to sample");
  // Floyd's algorithm: distinct indices, each subset equally likely.
  const size_t n = size();
  std::vector<size_t> picked;
  picked.reserve(batch_size);
  for (size_t j = n - batch_size; j < n; ++j) {
    std::uniform_int_distribution<size_t> dist(0, j);
    const size_t t = dist(rng);
    if (std::find(picked.begin(), picked.end(), t) == picked.end()) {
      picked.push_back(t);
    } else {
      picked.push_back(j);
    }
  }
  return picked;
}

double TrainBatch::valid_steps() const {
  double n = 0.0;
  for (const Vector& m : mask) n += m.sum();
  return n;
}

TrainBatch make_batch(const std::vector<const envs::EpisodeRecord*>& episodes, const agents::AgentNetwork& layout) {
  if (episodes.empty()) throw std::invalid_argument("make_batch: no episodes");
  TrainBatch b;
  b.batch_size = static_cast<int>(episodes.size());
  b.num_agents = layout.num_agents();
  b.num_actions = layout.num_actions();
  for (const auto* ep : episodes) {
    if (ep->length() < 1) throw std::invalid_argument("make_batch: episode without steps");
    if (ep->num_agents != b.num_agents || ep->obs_dim != layout.obs_dim()) {
      throw std::invalid_argument("make_batch: episode shape does not match the agent network");
    }
    b.lengths.push_back(ep->length());
    b.max_length = std::max(b.max_length, ep->length());
  }
  const int n = b.num_agents;
  const int rows = b.batch_size * n;
  const int state_dim = episodes.front()->state_dim;
  const int in_dim = layout.input_dim();

  for (int t = 0; t <= b.max_length; ++t) {
    Matrix inputs = Matrix::Zero(rows, in_dim);
    Matrix states = Matrix::Zero(b.batch_size, state_dim);
    for (int e = 0; e < b.batch_size; ++e) {
      const envs::EpisodeRecord& ep = *episodes[static_cast<size_t>(e)];
      if (t > ep.length()) continue;
      for (int i = 0; i < n; ++i) {
        const int last = t == 0 ? -1 : ep.joint_action(t - 1)[static_cast<size_t>(i)];
        const int r = e * n + i;
        layout.fill_input_row({inputs.row(r).data(), static_cast<size_t>(in_dim)}, ep.obs(t, i), last, i);
      }
      const auto s = ep.state(t);
      std::copy(s.begin(), s.end(), states.row(e).data());
    }
    b.agent_inputs.push_back(std::move(inputs));
    b.states.push_back(std::move(states));
  }

  for (int t = 0; t < b.max_length; ++t) {
    std::vector<int> actions(static_cast<size_t>(rows), 0);
    Vector reward = Vector::Zero(b.batch_size);
    Vector term = Vector::Zero(b.batch_size);
    Vector mask = Vector::Zero(b.batch_size);
    for (int e = 0; e < b.batch_size; ++e) {
      const envs::EpisodeRecord& ep = *episodes[static_cast<size_t>(e)];
      if (t >= ep.length()) continue;
      const auto ja = ep.joint_action(t);
      for (int i = 0; i < n; ++i) actions[static_cast<size_t>(e * n + i)] = ja[static_cast<size_t>(i)];
      reward(e) = ep.rewards[static_cast<size_t>(t)];
      term(e) = (t == ep.length() - 1 && ep.terminated) ? 1.0 : 0.0;
      mask(e) = 1.0;
    }
    b.actions.push_back(std::move(actions));
    b.rewards.push_back(std::move(reward));
    b.terminated.push_back(std::move(term));
    b.mask.push_back(std::move(mask));
  }
  return b;
}

TrainBatch sample_batch(const ReplayBuffer& buffer, size_t batch_size, nn::Rng& rng,
                        const agents::AgentNetwork& layout) {
  std::vector<const envs::EpisodeRecord*> eps;
  for (size_t i : buffer.sample_indices(batch_size, rng)) eps.push_back(&buffer.at(i));
  return make_batch(eps, layout);
}

}  // namespace rqn::training

#ifndef RQN_TRAINING_REPLAY_BUFFER_H_
#define RQN_TRAINING_REPLAY_BUFFER_H_

#include <cstdint>
#include <deque>
#include <vector>

#include "rqn/agents/agent_network.h"
#include "rqn/envs/episode.h"
#include "rqn/nn/tensor.h"

namespace rqn::training {

using nn::Matrix;
using nn::Vector;

// FIFO store of whole episodes.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(size_t capacity);

  void store_episode(envs::EpisodeRecord episode);
  size_t size() const { return episodes_.size(); }
  size_t capacity() const { return capacity_; }
  bool can_sample(size_t batch_size) const { return batch_size > 0 && size() >= batch_size; }
  const envs::EpisodeRecord& at(size_t i) const { return episodes_[i]; }
  std::uint64_t total_stored() const { return total_stored_; }

  // Uniform sample of distinct indices; throws if the buffer is too small.
  std::vector<size_t> sample_indices(size_t batch_size, nn::Rng& rng) const;

 private:
  size_t capacity_;
  std::deque<envs::EpisodeRecord> episodes_;
  std::uint64_t total_stored_ = 0;
};

// Episodes padded to the longest one, time-major. Rows inside a step are
// ordered episode-major, agent-minor (row = b * N + i).
struct TrainBatch {
  int batch_size = 0;
  int num_agents = 0;
  int num_actions = 0;
  int max_length = 0;
  std::vector<int> lengths;
  std::vector<Matrix> agent_inputs;       // max_length + 1 entries of (B*N) x input_dim
  std::vector<Matrix> states;             // max_length + 1 entries of B x state_dim
  std::vector<std::vector<int>> actions;  // max_length entries of B*N (0 on padding)
  std::vector<Vector> rewards;            // max_length entries of B
  std::vector<Vector> terminated;         // 1 on the final step of a task-terminated episode
  std::vector<Vector> mask;               // 1 on valid steps

  double valid_steps() const;
};

TrainBatch make_batch(const std::vector<const envs::EpisodeRecord*>& episodes, const agents::AgentNetwork& layout);
TrainBatch sample_batch(const ReplayBuffer& buffer, size_t batch_size, nn::Rng& rng,
                        const agents::AgentNetwork& layout);

}  // namespace rqn::training

#endif  // RQN_TRAINING_REPLAY_BUFFER_H_

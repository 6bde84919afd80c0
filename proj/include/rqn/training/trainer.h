#ifndef RQN_TRAINING_TRAINER_H_
#define RQN_TRAINING_TRAINER_H_

#include <cstdint>
#include <memory>
#include <optional>

#include "rqn/agents/policy.h"
#include "rqn/envs/environment.h"
#include "rqn/training/learner.h"
#include "rqn/training/replay_buffer.h"
#include "rqn/training/rollout.h"

namespace rqn::training {

struct TrainerConfig {
  LearnerConfig learner;
  size_t buffer_capacity = 5000;
  int batch_size = 32;
  agents::EpsilonSchedule epsilon;
  // Overrides the schedule with a constant rate when set.
  std::optional<double> epsilon_fixed;
  int target_sync_interval = 200;  // episodes
  std::uint64_t seed = 0;
};

// Independent random streams of one run, all derived from the run seed.
enum SeedStream : std::uint64_t {
  kInitStream = 1,
  kExploreStream = 2,
  kBatchStream = 3,
  kTrainEpisodeStream = 4,
  kEvalStream = 5,
  kProbeStream = 6,
};

// Sequential training loop: act -> store -> sample -> train -> sync.
class Trainer {
 public:
  Trainer(TrainerConfig config, std::unique_ptr<envs::Environment> env);

  // Runs one training episode and (when the buffer holds a full batch) one
  // gradient step. Returns the stats of that step, if any.
  std::optional<TrainStats> train_episode();

  int episodes_done() const { return episodes_; }
  int train_steps() const { return train_steps_; }
  std::int64_t env_steps() const { return env_steps_; }
  double current_epsilon() const;

  const TrainerConfig& config() const { return config_; }
  Learner& learner() { return learner_; }
  const Learner& learner() const { return learner_; }
  const ReplayBuffer& buffer() const { return buffer_; }
  envs::Environment& env() { return *env_; }

 private:
  TrainerConfig config_;
  std::unique_ptr<envs::Environment> env_;
  Learner learner_;
  ReplayBuffer buffer_;
  nn::Rng explore_rng_;
  nn::Rng batch_rng_;
  int episodes_ = 0;
  int train_steps_ = 0;
  std::int64_t env_steps_ = 0;
};

}  // namespace rqn::training

#endif  // RQN_TRAINING_TRAINER_H_

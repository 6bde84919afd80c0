#include "rqn/training/trainer.h"

#include <stdexcept>

namespace rqn::training {

Trainer::Trainer(TrainerConfig config, std::unique_ptr<envs::Environment> env)
    : config_(config),
      env_(std::move(env)),
      learner_(config.learner, env_->spec(), nn::derive_seed(config.seed, kInitStream)),
      buffer_(config.buffer_capacity),
      explore_rng_(nn::derive_seed(config.seed, kExploreStream)),
      batch_rng_(nn::derive_seed(config.seed, kBatchStream)) {
  if (config_.batch_size < 1) throw std::invalid_argument("batch size must be positive");
  if (config_.target_sync_interval < 1) throw std::invalid_argument("target sync interval must be positive");
  if (config_.epsilon_fixed && (*config_.epsilon_fixed < 0.0 || *config_.epsilon_fixed > 1.0)) {
    throw std::invalid_argument("fixed epsilon must lie in [0, 1]");
  }
}

double Trainer::current_epsilon() const {
  return config_.epsilon_fixed ? *config_.epsilon_fixed : config_.epsilon.at(env_steps_);
}

std::optional<TrainStats> Trainer::train_episode() {
  const std::uint64_t seed =
      nn::derive_seed(nn::derive_seed(config_.seed, kTrainEpisodeStream), static_cast<std::uint64_t>(episodes_));
  const std::int64_t start = env_steps_;
  EpsilonFn eps = [this, start](int t) {
    return config_.epsilon_fixed ? *config_.epsilon_fixed : config_.epsilon.at(start + t);
  };
  Rollout r = run_episode(*env_, learner_.agent(), seed, eps, explore_rng_);
  env_steps_ += r.episode.length();
  buffer_.store_episode(std::move(r.episode));

  std::optional<TrainStats> stats;
  const size_t batch = static_cast<size_t>(config_.batch_size);
  if (buffer_.can_sample(batch)) {
    stats = learner_.train_step(sample_batch(buffer_, batch, batch_rng_, learner_.agent()));
    ++train_steps_;
  }
  ++episodes_;
  if (episodes_ % config_.target_sync_interval == 0) learner_.sync_targets();
  return stats;
}

}  // namespace rqn::training

#ifndef RQN_HARNESS_EXPERIMENT_H_
#define RQN_HARNESS_EXPERIMENT_H_

#include <functional>
#include <memory>
#include <vector>

#include "rqn/envs/factory.h"
#include "rqn/harness/evaluation.h"
#include "rqn/harness/metrics.h"
#include "rqn/training/trainer.h"

namespace rqn::harness {

struct ExperimentConfig {
  training::TrainerConfig trainer;
  envs::EnvConfig env;
  int episodes = 5000;
  int eval_interval = kEvalInterval;
  int eval_episodes = kEvalEpisodes;
};

struct ExperimentResult {
  std::vector<EvalRecord> evals;
  std::vector<PhiSnapshot> phi;  // RQN only
  std::vector<double> smoothed;  // smooth_cma10 of the eval rewards
  double final_smoothed = 0.0;
};

// Called after every evaluation.
using EvalHook = std::function<void(training::Trainer&, const EvalRecord&)>;

// One seeded run: trains for the episode budget, evaluating greedily every
// `eval_interval` episodes and (for RQN) tracing phi on a fixed probe episode.
class Experiment {
 public:
  explicit Experiment(ExperimentConfig config);

  ExperimentResult run(const EvalHook& hook = {});

  const ExperimentConfig& config() const { return config_; }
  training::Trainer& trainer() { return trainer_; }
  envs::Environment& eval_env() { return *eval_env_; }

 private:
  ExperimentConfig config_;
  training::Trainer trainer_;
  std::unique_ptr<envs::Environment> eval_env_;
};

}  // namespace rqn::harness

#endif  // RQN_HARNESS_EXPERIMENT_H_

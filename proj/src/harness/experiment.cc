#include "rqn/harness/experiment.h"

#include <stdexcept>

namespace rqn::harness {

Experiment::Experiment(ExperimentConfig config)
    : config_(config),
      trainer_(config.trainer, envs::make_environment(config.env)),
      eval_env_(envs::make_environment(config.env)) {
  if (config_.episodes < 0) throw std::invalid_argument("episode budget must be non-negative");
  if (config_.eval_interval < 1 || config_.eval_episodes < 1) {
    throw std::invalid_argument("evaluation interval and episode count must be positive");
  }
}

ExperimentResult Experiment::run(const EvalHook& hook) {
  ExperimentResult result;
  const std::uint64_t seed = config_.trainer.seed;
  const std::uint64_t probe_seed = nn::derive_seed(seed, training::kProbeStream);
  training::Learner& learner = trainer_.learner();

  while (trainer_.episodes_done() < config_.episodes) {
    trainer_.train_episode();
    const int done = trainer_.episodes_done();
    if (done % config_.eval_interval != 0) continue;

    EvalRecord rec{done, evaluate(learner.agent(), *eval_env_, seed, config_.eval_episodes)};
    result.evals.push_back(rec);
    if (const mixers::RqnEstimator* est = learner.rqn()) {
      result.phi.push_back({done, phi_probe(learner.agent(), *est, *eval_env_, probe_seed)});
    }
    if (hook) hook(trainer_, rec);
  }

  if (!result.evals.empty()) {
    std::vector<double> raw;
    for (const auto& e : result.evals) raw.push_back(e.eval_reward);
    result.smoothed = smooth_cma10(raw);
    result.final_smoothed = result.smoothed.back();
  }
  return result;
}

}  // namespace rqn::harness

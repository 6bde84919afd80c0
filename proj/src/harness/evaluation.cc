#include "rqn/harness/evaluation.h"

#include <random>

#include "rqn/training/rollout.h"
#include "rqn/training/trainer.h"

namespace rqn::harness {

std::uint64_t eval_episode_seed(std::uint64_t run_seed, int k) {
  return nn::derive_seed(nn::derive_seed(run_seed, training::kEvalStream), static_cast<std::uint64_t>(k));
}

double evaluate(const agents::AgentNetwork& agent, envs::Environment& env, std::uint64_t run_seed, int episodes) {
  if (episodes < 1) throw std::invalid_argument("evaluate: need at least one episode");
  nn::Rng unused(0);
  double total = 0.0;
  for (int k = 0; k < episodes; ++k) {
    total += training::run_episode(env, agent, eval_episode_seed(run_seed, k), nullptr, unused).episode.total_reward();
  }
  return total / episodes;
}

std::vector<double> phi_probe(const agents::AgentNetwork& agent, const mixers::RqnEstimator& estimator,
                              envs::Environment& env, std::uint64_t probe_seed) {
  nn::Rng unused(0);
  const training::Rollout r = training::run_episode(env, agent, probe_seed, nullptr, unused);
  return estimator.factors(mixers::rqn_features(r.chosen_q));
}

bool qmix_monotonicity_probe(const mixers::QmixMixer& mixer, std::uint64_t seed, int samples) {
  nn::Rng rng(seed);
  std::uniform_real_distribution<double> qdist(-15.0, 15.0);
  std::uniform_real_distribution<double> sdist(-1.0, 1.0);
  const int n = mixer.num_agents();
  nn::Matrix q(1, n), s(1, mixer.state_dim());
  for (int k = 0; k < samples; ++k) {
    for (int i = 0; i < n; ++i) q(0, i) = qdist(rng);
    for (Eigen::Index j = 0; j < s.cols(); ++j) s(0, j) = sdist(rng);
    const double base = mixer.mix(q, s)(0, 0);
    for (int i = 0; i < n; ++i) {
      nn::Matrix up = q;
      up(0, i) += 0.5;
      if (mixer.mix(up, s)(0, 0) < base - 1e-12) return false;
    }
  }
  return true;
}

}  // namespace rqn::harness

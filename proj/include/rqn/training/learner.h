#ifndef RQN_TRAINING_LEARNER_H_
#define RQN_TRAINING_LEARNER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rqn/agents/agent_network.h"
#include "rqn/envs/environment.h"
#include "rqn/mixers/qmix.h"
#include "rqn/mixers/qtran.h"
#include "rqn/mixers/rqn.h"
#include "rqn/nn/optimizer.h"
#include "rqn/training/replay_buffer.h"

namespace rqn::training {

enum class Algorithm { kVdn, kQmix, kQtran, kRqn };

Algorithm parse_algorithm(const std::string& name);
std::string to_string(Algorithm a);

struct LearnerConfig {
  Algorithm algorithm = Algorithm::kRqn;
  double gamma = 0.99;
  nn::OptimizerOptions optimizer;
  mixers::QtranWeights qtran_weights;
  // Stop the RQN features from passing gradient back into the agents.
  bool rqn_detach_features = false;
};

// Frozen copies used only to build TD targets.
struct TargetNets {
  agents::AgentNetwork agent;
  std::optional<mixers::QmixMixer> qmix;
  std::optional<mixers::QtranHeads> qtran;
};

struct TrainStats {
  double loss = 0.0;
  double grad_norm = 0.0;
  // QTRAN-base components (zero for other algorithms)
  double td_loss = 0.0;
  double opt_loss = 0.0;
  double nopt_loss = 0.0;
};

// Owns the evaluation networks, their targets and the optimizer for one
// algorithm, and performs gradient steps on sampled batches.
class Learner {
 public:
  Learner(LearnerConfig config, const envs::DecPomdpSpec& spec, std::uint64_t init_seed);
  Learner(const Learner&) = delete;
  Learner& operator=(const Learner&) = delete;

  Algorithm algorithm() const { return config_.algorithm; }
  const LearnerConfig& config() const { return config_; }
  const envs::DecPomdpSpec& spec() const { return spec_; }

  agents::AgentNetwork& agent() { return agent_; }
  const agents::AgentNetwork& agent() const { return agent_; }
  mixers::RqnEstimator* rqn() { return rqn_ ? &*rqn_ : nullptr; }
  const mixers::RqnEstimator* rqn() const { return rqn_ ? &*rqn_ : nullptr; }
  mixers::QmixMixer* qmix() { return qmix_ ? &*qmix_ : nullptr; }
  const mixers::QmixMixer* qmix() const { return qmix_ ? &*qmix_ : nullptr; }
  mixers::QtranHeads* qtran() { return qtran_ ? &*qtran_ : nullptr; }
  const mixers::QtranHeads* qtran() const { return qtran_ ? &*qtran_ : nullptr; }
  const TargetNets& targets() const { return targets_; }

  // y[t](b) = r + gamma * (1 - terminated) * next-step target value. For VDN
  // and RQN the next-step value is the plain sum of per-agent target maxima;
  // QMIX and QTRAN go through their own target heads. Only target networks
  // are evaluated.
  std::vector<Vector> td_targets(const TrainBatch& batch) const;

  // Loss of the batch under the current parameters (no update). When
  // `accumulate_grad` is set the gradients are added to the parameters.
  TrainStats compute_loss(const TrainBatch& batch, bool accumulate_grad);
  // compute_loss + optimizer step. Throws nn::DivergenceError on NaN.
  TrainStats train_step(const TrainBatch& batch);

  void sync_targets();
  int sync_count() const { return syncs_; }
  // Estimation-network forward passes observed while building TD targets,
  // summed over every compute_loss call so far.
  std::uint64_t estimator_calls_in_targets() const { return target_estimator_calls_; }

  std::vector<nn::Parameter*> parameters();
  std::vector<nn::Parameter*> agent_parameters() { return agent_.parameters(); }
  nn::Optimizer& optimizer() { return *optimizer_; }

 private:
  LearnerConfig config_;
  envs::DecPomdpSpec spec_;
  agents::AgentNetwork agent_;
  std::optional<mixers::RqnEstimator> rqn_;
  std::optional<mixers::QmixMixer> qmix_;
  std::optional<mixers::QtranHeads> qtran_;
  TargetNets targets_;
  std::unique_ptr<nn::Optimizer> optimizer_;
  int syncs_ = 0;
  std::uint64_t target_estimator_calls_ = 0;
};

}  // namespace rqn::training

#endif  // RQN_TRAINING_LEARNER_H_

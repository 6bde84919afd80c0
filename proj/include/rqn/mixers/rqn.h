#ifndef RQN_MIXERS_RQN_H_
#define RQN_MIXERS_RQN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rqn/nn/graph.h"
#include "rqn/nn/layers.h"

namespace rqn::mixers {

// Per-episode summary of each agent's chosen-action Q trajectory, laid out as
// [mean_1 .. mean_N, max_1 .. max_N].
struct EstimationFeatures {
  std::vector<double> values;

  int num_agents() const { return static_cast<int>(values.size() / 2); }
  double mean(int agent) const { return values[static_cast<size_t>(agent)]; }
  double max(int agent) const { return values[static_cast<size_t>(num_agents() + agent)]; }
};

// q_trajectory[t][i] is agent i's chosen-action value at step t; every row
// is a valid step.
EstimationFeatures rqn_features(const std::vector<std::vector<double>>& q_trajectory);

// Batched, recorded form. chosen[t] is B x N; masks[t](b) > 0 marks valid
// steps; every batch row must have at least one valid step. Returns B x 2N.
// With `detach` the features are computed from values only and block the
// gradient back into the agent networks.
nn::Var rqn_features(nn::Graph& g, std::span<const nn::Var> chosen, std::span<const nn::Vector> masks,
                     bool detach = false);

// Sum_i (Q_i + phi_i).
double rqn_mix(std::span<const double> q, std::span<const double> phi);

// Estimation network: 2N -> Linear(64) -> ReLU -> Linear(N). Weights are
// unconstrained in sign. Every forward pass is counted.
class RqnEstimator {
 public:
  static constexpr int kHidden = 64;

  RqnEstimator() = default;
  RqnEstimator(int num_agents, nn::Rng& rng);

  int num_agents() const { return num_agents_; }

  std::vector<double> factors(const EstimationFeatures& features) const;
  // B x 2N -> B x N.
  nn::Var factors(nn::Graph& g, nn::Var features);

  std::uint64_t forward_calls() const { return forward_calls_; }
  std::vector<nn::Parameter*> parameters();
  nn::Linear& hidden_layer() { return hidden_; }
  nn::Linear& output_layer() { return output_; }

 private:
  int num_agents_ = 0;
  nn::Linear hidden_;
  nn::Linear output_;
  mutable std::uint64_t forward_calls_ = 0;
};

}  // namespace rqn::mixers

#endif  // RQN_MIXERS_RQN_H_

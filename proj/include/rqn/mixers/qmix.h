#ifndef RQN_MIXERS_QMIX_H_
#define RQN_MIXERS_QMIX_H_

#include <span>
#include <vector>

#include "rqn/nn/graph.h"
#include "rqn/nn/layers.h"

namespace rqn::mixers {

// Monotonic two-layer mixing network whose weights and biases are produced
// from the global state by hypernetworks. Mixing weights pass through |.|,
// so dQ_tot/dQ_i >= 0 everywhere.
//   hidden = elu(q W1(s) + b1(s)),  Q_tot = hidden . w2(s) + V(s)
class QmixMixer {
 public:
  static constexpr int kEmbed = 32;

  QmixMixer() = default;
  QmixMixer(int num_agents, int state_dim, nn::Rng& rng);

  int num_agents() const { return num_agents_; }
  int state_dim() const { return state_dim_; }

  double mix(std::span<const double> q, std::span<const double> state) const;
  // Unrecorded batch form: q B x N, state B x S -> B x 1.
  nn::Matrix mix(const nn::Matrix& q, const nn::Matrix& state) const;
  // q: B x N, state: B x S -> B x 1.
  nn::Var mix(nn::Graph& g, nn::Var q, nn::Var state);

  std::vector<nn::Parameter*> parameters();
  nn::Linear& hyper_w1() { return hyper_w1_; }
  nn::Linear& hyper_b1() { return hyper_b1_; }
  nn::Linear& hyper_w2() { return hyper_w2_; }
  nn::Linear& hyper_v1() { return hyper_v1_; }
  nn::Linear& hyper_v2() { return hyper_v2_; }

 private:
  int num_agents_ = 0;
  int state_dim_ = 0;
  nn::Linear hyper_w1_;  // S -> N*E
  nn::Linear hyper_b1_;  // S -> E
  nn::Linear hyper_w2_;  // S -> E
  nn::Linear hyper_v1_;  // S -> E
  nn::Linear hyper_v2_;  // E -> 1
};

}  // namespace rqn::mixers

#endif  // RQN_MIXERS_QMIX_H_

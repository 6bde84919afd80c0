#ifndef RQN_AGENTS_AGENT_NETWORK_H_
#define RQN_AGENTS_AGENT_NETWORK_H_

#include <span>
#include <utility>
#include <vector>

#include "rqn/nn/graph.h"
#include "rqn/nn/layers.h"

namespace rqn::agents {

using nn::Matrix;

inline constexpr int kHiddenWidth = 64;

// Recurrent per-agent Q-network shared by all agents:
//   [obs | last action one-hot | agent id one-hot] -> Linear -> ReLU -> GRU -> Linear -> Q
// One row per agent (or per batch element and agent, agent-minor).
class AgentNetwork {
 public:
  AgentNetwork() = default;
  AgentNetwork(int obs_dim, int num_actions, int num_agents, nn::Rng& rng, int hidden = kHiddenWidth);

  int obs_dim() const { return obs_dim_; }
  int num_actions() const { return num_actions_; }
  int num_agents() const { return num_agents_; }
  int hidden_dim() const { return static_cast<int>(gru_.hidden_dim()); }
  int input_dim() const { return obs_dim_ + num_actions_ + num_agents_; }

  // Writes one input row. last_action < 0 means "no previous action".
  void fill_input_row(std::span<double> row, std::span<const double> obs, int last_action,
                      int agent) const;
  // Inputs for all agents at one step: N x input_dim.
  Matrix make_inputs(const std::vector<std::vector<double>>& observations,
                     std::span<const int> last_actions) const;
  Matrix initial_hidden(Eigen::Index rows) const { return Matrix::Zero(rows, hidden_dim()); }

  struct Output {
    Matrix q;       // rows x num_actions
    Matrix hidden;  // rows x hidden
  };
  Output forward(const Matrix& inputs, const Matrix& hidden) const;
  // Recorded forward; returns (q, hidden').
  std::pair<nn::Var, nn::Var> forward(nn::Graph& g, nn::Var inputs, nn::Var hidden);

  // Q_i(tau_i, .) for one agent from explicit one-hot vectors.
  std::pair<std::vector<double>, std::vector<double>> q_values(std::span<const double> obs,
                                                               std::span<const double> last_action,
                                                               std::span<const double> agent_id,
                                                               std::span<const double> hidden) const;

  std::vector<nn::Parameter*> parameters();
  nn::Linear& input_layer() { return input_; }
  nn::GruCell& gru() { return gru_; }
  nn::Linear& output_layer() { return output_; }

 private:
  int obs_dim_ = 0;
  int num_actions_ = 0;
  int num_agents_ = 0;
  nn::Linear input_;
  nn::GruCell gru_;
  nn::Linear output_;
};

}  // namespace rqn::agents

#endif  // RQN_AGENTS_AGENT_NETWORK_H_

#include "rqn/agents/agent_network.h"

#include <algorithm>

namespace rqn::agents {

AgentNetwork::AgentNetwork(int obs_dim, int num_actions, int num_agents, nn::Rng& rng, int hidden)
    : obs_dim_(obs_dim), num_actions_(num_actions), num_agents_(num_agents) {
  if (obs_dim < 1 || num_actions < 1 || num_agents < 1 || hidden < 1) {
    throw nn::ShapeError("agent network: dimensions must be positive");
  }
  input_ = nn::Linear("agent.fc1", input_dim(), hidden, rng);
  gru_ = nn::GruCell("agent.gru", hidden, hidden, rng);
  output_ = nn::Linear("agent.fc2", hidden, num_actions, rng);
}

void AgentNetwork::fill_input_row(std::span<double> row, std::span<const double> obs, int last_action,
                                  int agent) const {
  if (static_cast<int>(row.size()) != input_dim() || static_cast<int>(obs.size()) != obs_dim_) {
    throw nn::ShapeError("agent network: input row shape mismatch");
  }
  if (agent < 0 || agent >= num_agents_ || last_action >= num_actions_) {
    throw nn::ShapeError("agent network: agent or action index out of range");
  }
  std::fill(row.begin(), row.end(), 0.0);
  std::copy(obs.begin(), obs.end(), row.begin());
  if (last_action >= 0) row[static_cast<size_t>(obs_dim_ + last_action)] = 1.0;
  row[static_cast<size_t>(obs_dim_ + num_actions_ + agent)] = 1.0;
}

Matrix AgentNetwork::make_inputs(const std::vector<std::vector<double>>& observations,
                                 std::span<const int> last_actions) const {
  if (static_cast<int>(observations.size()) != num_agents_ ||
      static_cast<int>(last_actions.size()) != num_agents_) {
    throw nn::ShapeError("agent network: expected one observation and last action per agent");
  }
  Matrix in(num_agents_, input_dim());
  for (int i = 0; i < num_agents_; ++i) {
    fill_input_row({in.row(i).data(), static_cast<size_t>(input_dim())}, observations[static_cast<size_t>(i)],
                   last_actions[static_cast<size_t>(i)], i);
  }
  return in;
}

AgentNetwork::Output AgentNetwork::forward(const Matrix& inputs, const Matrix& hidden) const {
  const Matrix x = nn::relu(input_.forward(inputs));
  Output out;
  out.hidden = gru_.forward(x, hidden);
  out.q = output_.forward(out.hidden);
  return out;
}

std::pair<nn::Var, nn::Var> AgentNetwork::forward(nn::Graph& g, nn::Var inputs, nn::Var hidden) {
  nn::Var x = g.relu(input_.forward(g, inputs));
  nn::Var h = gru_.forward(g, x, hidden);
  return {output_.forward(g, h), h};
}

std::pair<std::vector<double>, std::vector<double>> AgentNetwork::q_values(
    std::span<const double> obs, std::span<const double> last_action, std::span<const double> agent_id,
    std::span<const double> hidden) const {
  if (static_cast<int>(obs.size()) != obs_dim_ || static_cast<int>(last_action.size()) != num_actions_ ||
      static_cast<int>(agent_id.size()) != num_agents_ || static_cast<int>(hidden.size()) != hidden_dim()) {
    throw nn::ShapeError("q_values: input shape mismatch");
  }
  Matrix in(1, input_dim());
  std::copy(obs.begin(), obs.end(), in.data());
  std::copy(last_action.begin(), last_action.end(), in.data() + obs_dim_);
  std::copy(agent_id.begin(), agent_id.end(), in.data() + obs_dim_ + num_actions_);
  const Matrix h = Eigen::Map<const Matrix>(hidden.data(), 1, hidden_dim());
  const Output out = forward(in, h);
  return {std::vector<double>(out.q.data(), out.q.data() + out.q.size()),
          std::vector<double>(out.hidden.data(), out.hidden.data() + out.hidden.size())};
}

std::vector<nn::Parameter*> AgentNetwork::parameters() {
  std::vector<nn::Parameter*> ps;
  for (auto* p : input_.parameters()) ps.push_back(p);
  for (auto* p : gru_.parameters()) ps.push_back(p);
  for (auto* p : output_.parameters()) ps.push_back(p);
  return ps;
}

}  // namespace rqn::agents

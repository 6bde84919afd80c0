#include "rqn/mixers/rqn.h"

#include <algorithm>
#include <stdexcept>

namespace rqn::mixers {

using nn::Matrix;
using nn::Var;

EstimationFeatures rqn_features(const std::vector<std::vector<double>>& q_trajectory) {
  if (q_trajectory.empty()) throw std::invalid_argument("rqn_features: empty episode");
  const size_t n = q_trajectory.front().size();
  EstimationFeatures f;
  f.values.assign(2 * n, 0.0);
  for (size_t i = 0; i < n; ++i) f.values[n + i] = q_trajectory.front()[i];
  for (const auto& step : q_trajectory) {
    if (step.size() != n) throw std::invalid_argument("rqn_features: ragged trajectory");
    for (size_t i = 0; i < n; ++i) {
      f.values[i] += step[i];
      f.values[n + i] = std::max(f.values[n + i], step[i]);
    }
  }
  for (size_t i = 0; i < n; ++i) f.values[i] /= static_cast<double>(q_trajectory.size());
  return f;
}

Var rqn_features(nn::Graph& g, std::span<const Var> chosen, std::span<const nn::Vector> masks, bool detach) {
  if (chosen.empty() || chosen.size() != masks.size()) {
    throw std::invalid_argument("rqn_features: need one mask per step");
  }
  const Eigen::Index rows = chosen.front().rows();
  nn::Vector count = nn::Vector::Zero(rows);
  for (const auto& m : masks) count += (m.array() > 0.0).cast<double>().matrix();
  if ((count.array() <= 0.0).any()) throw std::invalid_argument("rqn_features: episode without valid steps");

  std::vector<Var> steps;
  steps.reserve(chosen.size());
  for (const Var& q : chosen) steps.push_back(detach ? g.constant(q.value()) : q);

  Var mean;
  for (size_t t = 0; t < steps.size(); ++t) {
    const nn::Vector w = (masks[t].array() > 0.0).cast<double>() / count.array();
    Var term = g.scale_rows(steps[t], w);
    mean = t == 0 ? term : g.add(mean, term);
  }
  Var max = g.masked_max(steps, masks);
  const Var parts[] = {mean, max};
  return g.concat_cols(parts);
}

double rqn_mix(std::span<const double> q, std::span<const double> phi) {
  if (q.size() != phi.size()) throw std::invalid_argument("rqn_mix: factor count differs from agent count");
  double total = 0.0;
  for (size_t i = 0; i < q.size(); ++i) total += q[i] + phi[i];
  return total;
}

RqnEstimator::RqnEstimator(int num_agents, nn::Rng& rng)
    : num_agents_(num_agents),
      hidden_("rqn.fc1", 2 * num_agents, kHidden, rng),
      output_("rqn.fc2", kHidden, num_agents, rng) {}

std::vector<double> RqnEstimator::factors(const EstimationFeatures& features) const {
  if (static_cast<int>(features.values.size()) != 2 * num_agents_) {
    throw nn::ShapeError("rqn: expected 2N features");
  }
  ++forward_calls_;
  const Matrix x = Eigen::Map<const Matrix>(features.values.data(), 1, 2 * num_agents_);
  const Matrix phi = output_.forward(nn::relu(hidden_.forward(x)));
  return {phi.data(), phi.data() + phi.size()};
}

Var RqnEstimator::factors(nn::Graph& g, Var features) {
  if (features.cols() != 2 * num_agents_) throw nn::ShapeError("rqn: expected 2N features");
  ++forward_calls_;
  return output_.forward(g, g.relu(hidden_.forward(g, features)));
}

std::vector<nn::Parameter*> RqnEstimator::parameters() {
  return {&hidden_.weight(), &hidden_.bias(), &output_.weight(), &output_.bias()};
}

}  // namespace rqn::mixers

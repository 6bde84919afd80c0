#include "rqn/agents/policy.h"

#include <algorithm>
#include <stdexcept>

namespace rqn::agents {

double EpsilonSchedule::at(std::int64_t env_step) const {
  if (anneal_steps <= 0 || env_step >= anneal_steps) return finish;
  const double frac = static_cast<double>(std::max<std::int64_t>(env_step, 0)) / static_cast<double>(anneal_steps);
  return start + (finish - start) * frac;
}

int greedy_action(std::span<const double> q) {
  if (q.empty()) throw std::invalid_argument("greedy_action: empty Q-vector");
  int best = 0;
  for (size_t a = 1; a < q.size(); ++a) {
    if (q[a] > q[static_cast<size_t>(best)]) best = static_cast<int>(a);
  }
  return best;
}

int select_action(std::span<const double> q, double epsilon, nn::Rng& rng) {
  if (q.empty()) throw std::invalid_argument("select_action: empty Q-vector");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("select_action: epsilon outside [0, 1]");
  if (epsilon > 0.0) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng) < epsilon) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(q.size()) - 1);
      return pick(rng);
    }
  }
  return greedy_action(q);
}

}  // namespace rqn::agents

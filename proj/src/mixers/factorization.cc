#include "rqn/mixers/factorization.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rqn/agents/policy.h"

namespace rqn::mixers {

int TabularInstance::joint_count() const {
  int n = 1;
  for (int i = 0; i < num_agents; ++i) n *= num_actions;
  return n;
}

std::vector<int> TabularInstance::decode(int joint) const {
  std::vector<int> a(static_cast<size_t>(num_agents));
  for (int i = num_agents - 1; i >= 0; --i) {
    a[static_cast<size_t>(i)] = joint % num_actions;
    joint /= num_actions;
  }
  return a;
}

int TabularInstance::encode(const std::vector<int>& joint) const {
  int k = 0;
  for (int a : joint) k = k * num_actions + a;
  return k;
}

void TabularInstance::validate() const {
  if (num_agents < 1 || num_actions < 1) throw std::invalid_argument("instance: empty shape");
  if (static_cast<int>(q_individual.size()) != num_agents || static_cast<int>(phi.size()) != num_agents ||
      static_cast<int>(q_tot.size()) != joint_count()) {
    throw std::invalid_argument("instance: table sizes disagree with shape");
  }
  for (const auto& q : q_individual) {
    if (static_cast<int>(q.size()) != num_actions) throw std::invalid_argument("instance: ragged Q_i table");
  }
}

std::vector<int> individual_greedy(const std::vector<std::vector<double>>& q_individual) {
  std::vector<int> a;
  a.reserve(q_individual.size());
  for (const auto& q : q_individual) a.push_back(agents::greedy_action(q));
  return a;
}

bool igm_check(const std::vector<std::vector<double>>& q_individual, const std::vector<double>& q_tot,
               int num_actions) {
  TabularInstance x{static_cast<int>(q_individual.size()), num_actions, q_individual,
                    std::vector<double>(q_individual.size(), 0.0), q_tot};
  return igm_check(x);
}

bool igm_check(const TabularInstance& x) {
  x.validate();
  const int joint = static_cast<int>(std::max_element(x.q_tot.begin(), x.q_tot.end()) - x.q_tot.begin());
  return x.decode(joint) == individual_greedy(x.q_individual);
}

bool theorem1_verify(const TabularInstance& x, double tol) {
  x.validate();
  const std::vector<int> abar = individual_greedy(x.q_individual);
  const int greedy = x.encode(abar);
  double phi_sum = 0.0;
  for (double p : x.phi) phi_sum += p;

  double sum_at_greedy = 0.0;
  for (int i = 0; i < x.num_agents; ++i) {
    sum_at_greedy += x.q_individual[static_cast<size_t>(i)][static_cast<size_t>(abar[static_cast<size_t>(i)])];
  }
  const double qtot_max = *std::max_element(x.q_tot.begin(), x.q_tot.end());
  if (std::abs(phi_sum - (qtot_max - sum_at_greedy)) > tol) return false;

  for (int k = 0; k < x.joint_count(); ++k) {
    const std::vector<int> a = x.decode(k);
    double shifted = 0.0;
    for (int i = 0; i < x.num_agents; ++i) {
      shifted += x.q_individual[static_cast<size_t>(i)][static_cast<size_t>(a[static_cast<size_t>(i)])] +
                 x.phi[static_cast<size_t>(i)];
    }
    const double gap = shifted - x.q_tot[static_cast<size_t>(k)];
    if (k == greedy) {
      if (std::abs(gap) > tol) return false;
    } else if (gap < -tol) {
      return false;
    }
  }
  return true;
}

TabularInstance random_factorizable_instance(int num_agents, int num_actions, nn::Rng& rng) {
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  std::uniform_real_distribution<double> slack(0.01, 5.0);
  TabularInstance x;
  x.num_agents = num_agents;
  x.num_actions = num_actions;
  x.q_individual.assign(static_cast<size_t>(num_agents), std::vector<double>(static_cast<size_t>(num_actions)));
  for (auto& q : x.q_individual) {
    for (double& v : q) v = value(rng);
  }
  x.phi.resize(static_cast<size_t>(num_agents));
  for (double& p : x.phi) p = value(rng);
  x.q_tot.resize(static_cast<size_t>(x.joint_count()));
  const int greedy = x.encode(individual_greedy(x.q_individual));
  for (int k = 0; k < x.joint_count(); ++k) {
    const std::vector<int> a = x.decode(k);
    double shifted = 0.0;
    for (int i = 0; i < num_agents; ++i) {
      shifted += x.q_individual[static_cast<size_t>(i)][static_cast<size_t>(a[static_cast<size_t>(i)])] +
                 x.phi[static_cast<size_t>(i)];
    }
    x.q_tot[static_cast<size_t>(k)] = k == greedy ? shifted : shifted - slack(rng);
  }
  return x;
}

TabularInstance random_instance(int num_agents, int num_actions, nn::Rng& rng) {
  std::uniform_real_distribution<double> value(-10.0, 10.0);
  TabularInstance x;
  x.num_agents = num_agents;
  x.num_actions = num_actions;
  x.q_individual.assign(static_cast<size_t>(num_agents), std::vector<double>(static_cast<size_t>(num_actions)));
  for (auto& q : x.q_individual) {
    for (double& v : q) v = value(rng);
  }
  x.phi.resize(static_cast<size_t>(num_agents));
  for (double& p : x.phi) p = value(rng);
  x.q_tot.resize(static_cast<size_t>(x.joint_count()));
  for (double& v : x.q_tot) v = value(rng);
  return x;
}

}  // namespace rqn::mixers

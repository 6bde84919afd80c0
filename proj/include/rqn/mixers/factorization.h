#ifndef RQN_MIXERS_FACTORIZATION_H_
#define RQN_MIXERS_FACTORIZATION_H_

#include <vector>

#include "rqn/nn/tensor.h"

namespace rqn::mixers {

// Tabular factorization instance over N agents with A actions each. Joint
// actions are indexed lexicographically with agent 0 most significant.
struct TabularInstance {
  int num_agents = 0;
  int num_actions = 0;
  std::vector<std::vector<double>> q_individual;  // [agent][action]
  std::vector<double> phi;                        // one correction factor per agent
  std::vector<double> q_tot;                      // [joint index]

  int joint_count() const;
  std::vector<int> decode(int joint) const;
  int encode(const std::vector<int>& joint) const;
  void validate() const;
};

// Individual greedy actions (lowest index on ties).
std::vector<int> individual_greedy(const std::vector<std::vector<double>>& q_individual);

// Individual-Global-Max: the lowest-index maximiser of q_tot equals the tuple
// of individual greedy actions.
bool igm_check(const std::vector<std::vector<double>>& q_individual, const std::vector<double>& q_tot,
               int num_actions);
bool igm_check(const TabularInstance& x);

// The affine-shift sufficient condition: with abar the individual greedy tuple,
//   sum_i (Q_i(a_i) + phi_i) - Q_tot(a)  = 0 at abar, >= 0 elsewhere,
// and sum_i phi_i = max_a Q_tot(a) - sum_i Q_i(abar_i), each to `tol`.
bool theorem1_verify(const TabularInstance& x, double tol = 1e-9);

// Random Q_i, phi and a Q_tot that satisfies the condition above by
// construction (strictly positive slack away from abar).
TabularInstance random_factorizable_instance(int num_agents, int num_actions, nn::Rng& rng);
// Fully random Q_i, phi and Q_tot; usually fails verification.
TabularInstance random_instance(int num_agents, int num_actions, nn::Rng& rng);

}  // namespace rqn::mixers

#endif  // RQN_MIXERS_FACTORIZATION_H_

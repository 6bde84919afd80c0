#ifndef RQN_HARNESS_RECONSTRUCTION_H_
#define RQN_HARNESS_RECONSTRUCTION_H_

#include <vector>

#include "rqn/envs/environment.h"
#include "rqn/training/learner.h"

namespace rqn::harness {

// Q_tot for every joint action of a two-agent one-step game; entry
// values[a0][a1].
struct ReconstructionTable {
  std::vector<std::vector<double>> values;

  int size() const { return static_cast<int>(values.size()); }
  double at(int a0, int a1) const { return values[static_cast<size_t>(a0)][static_cast<size_t>(a1)]; }
  double max_abs_error(const std::vector<std::vector<double>>& reference) const;
};

// Evaluates the learner's joint value at the first step of the matrix game:
// VDN the plain sum, RQN the sum of Q_i + phi_i with phi from the one-step
// trajectory of that joint action, QMIX its mixer on the game state, QTRAN
// its joint head. Throws envs::EnvError for any other environment.
ReconstructionTable reconstruct_qtot(const training::Learner& learner, envs::Environment& env);

// True when entry(i, j) = r_i + c_j for some r, c, to within `tol`.
bool is_additive(const ReconstructionTable& table, double tol = 1e-6);

}  // namespace rqn::harness

#endif  // RQN_HARNESS_RECONSTRUCTION_H_

#ifndef RQN_HARNESS_THEOREM_H_
#define RQN_HARNESS_THEOREM_H_

#include <cstdint>
#include <vector>

namespace rqn::harness {

struct TheoremShape {
  int num_agents = 2;
  int num_actions = 3;
};

struct TheoremReport {
  TheoremShape shape;
  int instances = 0;
  int verified = 0;          // theorem1_verify held
  int igm_held = 0;          // igm_check held
  int implication_failures = 0;  // verified but IGM violated
};

// Shapes used by the default sweep: N=2 with 2..4 actions, N=3 with 2..3.
std::vector<TheoremShape> default_theorem_shapes();

// Half of the instances are built to satisfy the factorization condition,
// the other half are unconstrained.
TheoremReport verify_theorem(TheoremShape shape, int instances, std::uint64_t seed);

}  // namespace rqn::harness

#endif  // RQN_HARNESS_THEOREM_H_

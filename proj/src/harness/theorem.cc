#include "rqn/harness/theorem.h"

#include <stdexcept>

#include "rqn/mixers/factorization.h"
#include "rqn/nn/tensor.h"

namespace rqn::harness {

std::vector<TheoremShape> default_theorem_shapes() { return {{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}; }

TheoremReport verify_theorem(TheoremShape shape, int instances, std::uint64_t seed) {
  if (instances < 0) throw std::invalid_argument("verify_theorem: negative instance count");
  nn::Rng rng(nn::derive_seed(seed, static_cast<std::uint64_t>(shape.num_agents * 100 + shape.num_actions)));
  TheoremReport r{shape, instances, 0, 0, 0};
  for (int k = 0; k < instances; ++k) {
    const mixers::TabularInstance x = k % 2 == 0
                                          ? mixers::random_factorizable_instance(shape.num_agents, shape.num_actions, rng)
                                          : mixers::random_instance(shape.num_agents, shape.num_actions, rng);
    const bool verified = mixers::theorem1_verify(x);
    const bool igm = mixers::igm_check(x);
    r.verified += verified;
    r.igm_held += igm;
    r.implication_failures += verified && !igm;
  }
  return r;
}

}  // namespace rqn::harness

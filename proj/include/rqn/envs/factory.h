#ifndef RQN_ENVS_FACTORY_H_
#define RQN_ENVS_FACTORY_H_

#include <memory>
#include <string>

#include "rqn/envs/environment.h"

namespace rqn::envs {

struct EnvConfig {
  std::string name = "matrix";  // matrix | predator_prey | switch | checkers
  int n_predators = 2;
  int n_prey = 0;  // 0 picks n_predators / 2
  double capture_penalty = 0.0;
  int grid_size = 7;
  int episode_limit = 0;  // 0 keeps the environment default
};

std::unique_ptr<Environment> make_environment(const EnvConfig& config);
bool is_known_environment(const std::string& name);

}  // namespace rqn::envs

#endif  // RQN_ENVS_FACTORY_H_

#include "rqn/envs/factory.h"

#include <algorithm>

#include "rqn/envs/checkers.h"
#include "rqn/envs/matrix_game.h"
#include "rqn/envs/predator_prey.h"
#include "rqn/envs/switch_env.h"

namespace rqn::envs {

bool is_known_environment(const std::string& name) {
  return name == "matrix" || name == "predator_prey" || name == "switch" || name == "checkers";
}

std::unique_ptr<Environment> make_environment(const EnvConfig& config) {
  if (config.name == "matrix") return std::make_unique<MatrixGame>();
  if (config.name == "predator_prey") {
    PredatorPreyConfig c;
    c.grid_size = config.grid_size;
    c.num_predators = config.n_predators;
    c.num_prey = config.n_prey > 0 ? config.n_prey : std::max(1, config.n_predators / 2);
    c.capture_penalty = config.capture_penalty;
    if (config.episode_limit > 0) c.episode_limit = config.episode_limit;
    return std::make_unique<PredatorPrey>(c);
  }
  if (config.name == "switch") {
    SwitchConfig c;
    if (config.episode_limit > 0) c.episode_limit = config.episode_limit;
    return std::make_unique<Switch>(c);
  }
  if (config.name == "checkers") {
    CheckersConfig c;
    if (config.episode_limit > 0) c.episode_limit = config.episode_limit;
    return std::make_unique<Checkers>(c);
  }
  throw EnvError("unknown environment '" + config.name + "'");
}

}  // namespace rqn::envs

#ifndef RQN_CLI_RUN_CONFIG_H_
#define RQN_CLI_RUN_CONFIG_H_

#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "rqn/harness/experiment.h"

namespace rqn::cli {

// Bad user input: unknown keys, wrong types, invalid names or values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fully resolved settings of one run. Serialised flat into run.json.
struct RunConfig {
  std::string algo = "rqn";
  std::string env = "matrix";
  std::string preset = "table1";
  int n_predators = 2;
  int n_prey = 0;
  double capture_penalty = 0.0;
  int grid_size = 7;
  int episodes = 5000;
  std::uint64_t seed = 0;
  int buffer = 5000;
  int batch = 32;
  double eps_start = 1.0;
  double eps_min = 0.05;
  std::int64_t eps_anneal = 50000;
  std::optional<double> epsilon_fixed;
  double gamma = 0.99;
  double lr = 5e-4;
  int target_interval = 200;
  int eval_interval = 100;
  int eval_episodes = 20;
  std::string out = "runs/run";

  nlohmann::ordered_json to_json() const;
  harness::ExperimentConfig experiment() const;
  void validate() const;
};

// Layers are merged in increasing priority: built-in defaults (adjusted for
// the chosen environment), the preset, the config file, then explicit flags.
// Each layer is a flat JSON object; unknown keys raise ConfigError.
RunConfig resolve_config(const nlohmann::json& file_layer, const nlohmann::json& flag_layer);

nlohmann::json read_json_file(const std::string& path);

}  // namespace rqn::cli

#endif  // RQN_CLI_RUN_CONFIG_H_

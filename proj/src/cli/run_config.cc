#include "rqn/cli/run_config.h"

#include <fstream>
#include <set>

#include "rqn/training/learner.h"

namespace rqn::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "algo",      "env",   "preset",    "n_predators", "n_prey",         "capture_penalty", "grid_size",
      "episodes",  "seed",  "buffer",    "batch",       "eps_start",      "eps_min",         "eps_anneal",
      "epsilon_fixed", "gamma", "lr",    "target_interval", "eval_interval", "eval_episodes", "out"};
  return keys;
}

void check_keys(const json& layer, const std::string& where) {
  if (!layer.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [k, v] : layer.items()) {
    if (!known_keys().contains(k)) throw ConfigError(where + ": unknown key '" + k + "'");
  }
}

void overlay(json& base, const json& layer) {
  for (const auto& [k, v] : layer.items()) base[k] = v;
}

template <typename T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

json preset_layer(const std::string& name) {
  if (name == "table1") return json::object();
  if (name == "table2") return {{"buffer", 100000}, {"eps_min", 0.1}, {"eps_anneal", 2000000}};
  throw ConfigError("unknown preset '" + name + "' (expected table1 or table2)");
}

}  // namespace

ordered_json RunConfig::to_json() const {
  ordered_json j;
  j["algo"] = algo;
  j["env"] = env;
  j["preset"] = preset;
  j["n_predators"] = n_predators;
  j["n_prey"] = n_prey;
  j["capture_penalty"] = capture_penalty;
  j["grid_size"] = grid_size;
  j["episodes"] = episodes;
  j["seed"] = seed;
  j["buffer"] = buffer;
  j["batch"] = batch;
  j["eps_start"] = eps_start;
  j["eps_min"] = eps_min;
  j["eps_anneal"] = eps_anneal;
  j["epsilon_fixed"] = epsilon_fixed ? json(*epsilon_fixed) : json(nullptr);
  j["gamma"] = gamma;
  j["lr"] = lr;
  j["target_interval"] = target_interval;
  j["eval_interval"] = eval_interval;
  j["eval_episodes"] = eval_episodes;
  j["out"] = out;
  return j;
}

void RunConfig::validate() const {
  try {
    training::parse_algorithm(algo);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (!envs::is_known_environment(env)) {
    throw ConfigError("unknown environment '" + env + "' (expected matrix, predator_prey, switch or checkers)");
  }
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(episodes >= 0, "episodes must be non-negative");
  require(buffer >= 1, "buffer must be positive");
  require(batch >= 1, "batch must be positive");
  require(eps_start >= 0.0 && eps_start <= 1.0 && eps_min >= 0.0 && eps_min <= 1.0, "epsilon must lie in [0, 1]");
  require(eps_anneal >= 0, "eps_anneal must be non-negative");
  require(!epsilon_fixed || (*epsilon_fixed >= 0.0 && *epsilon_fixed <= 1.0), "epsilon_fixed must lie in [0, 1]");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must lie in [0, 1]");
  require(lr > 0.0, "lr must be positive");
  require(target_interval >= 1 && eval_interval >= 1 && eval_episodes >= 1, "intervals must be positive");
  require(n_predators >= 2, "n_predators must be at least 2");
  require(grid_size >= 3, "grid_size must be at least 3");
}

harness::ExperimentConfig RunConfig::experiment() const {
  validate();
  harness::ExperimentConfig x;
  x.env.name = env;
  x.env.n_predators = n_predators;
  x.env.n_prey = n_prey;
  x.env.capture_penalty = capture_penalty;
  x.env.grid_size = grid_size;
  x.episodes = episodes;
  x.eval_interval = eval_interval;
  x.eval_episodes = eval_episodes;
  training::TrainerConfig& t = x.trainer;
  t.learner.algorithm = training::parse_algorithm(algo);
  t.learner.gamma = gamma;
  t.learner.optimizer.learning_rate = lr;
  t.buffer_capacity = static_cast<size_t>(buffer);
  t.batch_size = batch;
  t.epsilon = {eps_start, eps_min, eps_anneal};
  t.epsilon_fixed = epsilon_fixed;
  t.target_sync_interval = target_interval;
  t.seed = seed;
  return x;
}

RunConfig resolve_config(const json& file_layer, const json& flag_layer) {
  check_keys(file_layer, "config file");
  check_keys(flag_layer, "flags");

  json top = json::object();
  overlay(top, file_layer);
  overlay(top, flag_layer);

  json merged = RunConfig{}.to_json();
  const std::string env = top.value("env", std::string("matrix"));
  if (env == "matrix") {
    merged["buffer"] = 500;
    merged["gamma"] = 1.0;
  }
  const std::string preset = top.contains("preset") ? get<std::string>(top, "preset") : "table1";
  overlay(merged, preset_layer(preset));
  overlay(merged, top);

  RunConfig c;
  c.algo = get<std::string>(merged, "algo");
  c.env = get<std::string>(merged, "env");
  c.preset = get<std::string>(merged, "preset");
  c.n_predators = get<int>(merged, "n_predators");
  c.n_prey = get<int>(merged, "n_prey");
  c.capture_penalty = get<double>(merged, "capture_penalty");
  c.grid_size = get<int>(merged, "grid_size");
  c.episodes = get<int>(merged, "episodes");
  c.seed = get<std::uint64_t>(merged, "seed");
  c.buffer = get<int>(merged, "buffer");
  c.batch = get<int>(merged, "batch");
  c.eps_start = get<double>(merged, "eps_start");
  c.eps_min = get<double>(merged, "eps_min");
  c.eps_anneal = get<std::int64_t>(merged, "eps_anneal");
  if (!merged["epsilon_fixed"].is_null()) c.epsilon_fixed = get<double>(merged, "epsilon_fixed");
  c.gamma = get<double>(merged, "gamma");
  c.lr = get<double>(merged, "lr");
  c.target_interval = get<int>(merged, "target_interval");
  c.eval_interval = get<int>(merged, "eval_interval");
  c.eval_episodes = get<int>(merged, "eval_episodes");
  c.out = get<std::string>(merged, "out");
  c.validate();
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace rqn::cli

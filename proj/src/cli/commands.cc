#include "rqn/cli/commands.h"

#include <fstream>
#include <iomanip>
#include <iostream>

#include "CLI11.hpp"
#include "rqn/harness/io.h"
#include "rqn/harness/reconstruction.h"
#include "rqn/harness/theorem.h"

namespace rqn::cli {

namespace fs = std::filesystem;

namespace {

struct LoadedRun {
  RunConfig config;
  std::unique_ptr<training::Learner> learner;
  std::unique_ptr<envs::Environment> env;
};

LoadedRun load_run(const std::string& run_dir) {
  const fs::path dir(run_dir);
  LoadedRun r;
  r.config = resolve_config(read_json_file((dir / "run.json").string()), nlohmann::json::object());
  const harness::ExperimentConfig x = r.config.experiment();
  r.env = envs::make_environment(x.env);
  r.learner = std::make_unique<training::Learner>(x.trainer.learner, r.env->spec(), 0);
  harness::load_parameters(dir / "params.json", r.learner->parameters());
  return r;
}

void print_table(const harness::ReconstructionTable& t, std::ostream& log) {
  for (int a0 = 0; a0 < t.size(); ++a0) {
    for (int a1 = 0; a1 < t.size(); ++a1) log << std::setw(9) << std::fixed << std::setprecision(2) << t.at(a0, a1);
    log << '\n';
  }
  log.unsetf(std::ios::floatfield);
}

}  // namespace

int cmd_train(const RunConfig& config, std::ostream& log) {
  const harness::ExperimentConfig x = config.experiment();
  const fs::path out(config.out);
  fs::create_directories(out);
  {
    std::ofstream f(out / "run.json", std::ios::binary);
    f << config.to_json().dump(2) << '\n';
  }

  harness::Experiment experiment(x);
  bool monotone = true;
  harness::EvalHook hook = [&](training::Trainer& t, const harness::EvalRecord& rec) {
    if (const mixers::QmixMixer* m = t.learner().qmix()) {
      monotone = monotone && harness::qmix_monotonicity_probe(*m, static_cast<std::uint64_t>(rec.episode));
    }
    log << "episode " << rec.episode << "  eval " << harness::format_double(rec.eval_reward) << '\n';
  };
  const harness::ExperimentResult result = experiment.run(hook);

  training::Learner& learner = experiment.trainer().learner();
  harness::write_metrics_csv(out / "metrics.csv", result.evals);
  if (learner.rqn()) harness::write_phi_csv(out / "phi.csv", result.phi);
  harness::save_parameters(out / "params.json", learner.parameters());
  if (config.env == "matrix") {
    harness::write_reconstruction_csv(out / "reconstruction.csv",
                                      harness::reconstruct_qtot(learner, experiment.eval_env()));
  }
  if (learner.qmix()) log << "monotonicity probe: " << (monotone ? "pass" : "FAIL") << '\n';
  if (!result.evals.empty()) log << "final smoothed eval reward " << harness::format_double(result.final_smoothed) << '\n';
  return monotone ? kExitOk : kExitFailure;
}

int cmd_evaluate(const std::string& run_dir, int episodes, std::ostream& log) {
  LoadedRun r = load_run(run_dir);
  const double v = harness::evaluate(r.learner->agent(), *r.env, r.config.seed, episodes);
  log << harness::format_double(v) << '\n';
  return kExitOk;
}

int cmd_reconstruct(const std::string& run_dir, std::ostream& log) {
  LoadedRun r = load_run(run_dir);
  if (r.config.env != "matrix") throw ConfigError("reconstruct needs a matrix-game run, got env " + r.config.env);
  const harness::ReconstructionTable t = harness::reconstruct_qtot(*r.learner, *r.env);
  print_table(t, log);
  harness::write_reconstruction_csv(fs::path(run_dir) / "reconstruction.csv", t);
  return kExitOk;
}

int cmd_verify_theorem(int instances, std::uint64_t seed, std::ostream& log) {
  int failures = 0;
  for (const harness::TheoremShape& s : harness::default_theorem_shapes()) {
    const harness::TheoremReport r = harness::verify_theorem(s, instances, seed);
    log << "N=" << s.num_agents << " |A|=" << s.num_actions << "  instances " << r.instances << "  verified "
        << r.verified << "  igm " << r.igm_held << "  implication failures " << r.implication_failures << '\n';
    failures += r.implication_failures;
  }
  log << (failures == 0 ? "PASS" : "FAIL") << '\n';
  return failures == 0 ? kExitOk : kExitFailure;
}

int cmd_aggregate(const std::vector<std::string>& run_dirs, const std::string& out, std::ostream& log) {
  if (run_dirs.size() < 2) throw ConfigError("aggregate needs at least two runs");
  std::vector<int> grid;
  std::vector<std::vector<double>> series;
  for (const std::string& d : run_dirs) {
    const auto evals = harness::read_metrics_csv(fs::path(d) / "metrics.csv");
    std::vector<int> episodes;
    std::vector<double> values;
    for (const auto& e : evals) {
      episodes.push_back(e.episode);
      values.push_back(e.eval_reward);
    }
    if (series.empty()) {
      grid = episodes;
    } else if (episodes != grid) {
      throw ConfigError("aggregate: " + d + " has a different evaluation grid");
    }
    series.push_back(std::move(values));
  }
  harness::write_aggregate_csv(out, grid, harness::aggregate_seeds(series));
  log << "wrote " << out << '\n';
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Value-factorization MARL experiments"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train one seeded run");
  std::string config_path;
  nlohmann::json flags = nlohmann::json::object();
  std::string algo, env, preset, out;
  int episodes = 0, buffer = 0, batch = 0, n_predators = 0;
  std::uint64_t seed = 0;
  double eps_min = 0, epsilon_fixed = 0, capture_penalty = 0;
  std::int64_t eps_anneal = 0;
  train->add_option("--config", config_path, "JSON config file");
  auto* o_algo = train->add_option("--algo", algo, "vdn, qmix, qtran or rqn");
  auto* o_env = train->add_option("--env", env, "matrix, predator_prey, switch or checkers");
  auto* o_episodes = train->add_option("--episodes", episodes);
  auto* o_seed = train->add_option("--seed", seed);
  auto* o_buffer = train->add_option("--buffer", buffer);
  auto* o_batch = train->add_option("--batch", batch);
  auto* o_eps_min = train->add_option("--eps-min", eps_min);
  auto* o_eps_anneal = train->add_option("--eps-anneal", eps_anneal);
  auto* o_eps_fixed = train->add_option("--epsilon-fixed", epsilon_fixed);
  auto* o_capture = train->add_option("--capture-penalty", capture_penalty);
  auto* o_preset = train->add_option("--preset", preset, "table1 or table2");
  auto* o_out = train->add_option("--out", out, "output directory");
  auto* o_npred = train->add_option("--n-predators", n_predators);

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "greedy evaluation of a trained run");
  std::string eval_dir;
  int eval_episodes = harness::kEvalEpisodes;
  evaluate->add_option("--run", eval_dir, "run directory")->required();
  evaluate->add_option("--episodes", eval_episodes);

  // reconstruct
  auto* reconstruct = app.add_subcommand("reconstruct", "joint-value table of a matrix-game run");
  std::string recon_dir;
  reconstruct->add_option("--run", recon_dir, "run directory")->required();

  // verify-theorem
  auto* verify = app.add_subcommand("verify-theorem", "random check that the factorization condition implies IGM");
  int instances = 1000;
  std::uint64_t verify_seed = 0;
  verify->add_option("--instances", instances);
  verify->add_option("--seed", verify_seed);

  // aggregate
  auto* aggregate = app.add_subcommand("aggregate", "mean and 95% interval over seeded runs");
  std::vector<std::string> runs;
  std::string agg_out = "aggregate.csv";
  aggregate->add_option("runs", runs, "run directories")->required();
  aggregate->add_option("--out", agg_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train->parsed()) {
      auto set = [&flags](CLI::Option* o, const char* key, const auto& v) {
        if (o->count() > 0) flags[key] = v;
      };
      set(o_algo, "algo", algo);
      set(o_env, "env", env);
      set(o_episodes, "episodes", episodes);
      set(o_seed, "seed", seed);
      set(o_buffer, "buffer", buffer);
      set(o_batch, "batch", batch);
      set(o_eps_min, "eps_min", eps_min);
      set(o_eps_anneal, "eps_anneal", eps_anneal);
      set(o_eps_fixed, "epsilon_fixed", epsilon_fixed);
      set(o_capture, "capture_penalty", capture_penalty);
      set(o_preset, "preset", preset);
      set(o_out, "out", out);
      set(o_npred, "n_predators", n_predators);
      const nlohmann::json file = config_path.empty() ? nlohmann::json::object() : read_json_file(config_path);
      return cmd_train(resolve_config(file, flags), std::cout);
    }
    if (evaluate->parsed()) return cmd_evaluate(eval_dir, eval_episodes, std::cout);
    if (reconstruct->parsed()) return cmd_reconstruct(recon_dir, std::cout);
    if (verify->parsed()) return cmd_verify_theorem(instances, verify_seed, std::cout);
    if (aggregate->parsed()) return cmd_aggregate(runs, agg_out, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const nn::DivergenceError& e) {
    std::cerr << "diverged: " << e.what() << '\n';
    return kExitDivergence;
  } catch (const envs::EnvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace rqn::cli

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any selected criterion fails.
//
//   acceptance [--work DIR] [N ...]
//
// With no numbers every criterion runs. Long criteria (9-11) train full runs.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rqn/cli/commands.h"
#include "rqn/cli/run_config.h"
#include "rqn/envs/factory.h"
#include "rqn/envs/predator_prey.h"
#include "rqn/harness/evaluation.h"
#include "rqn/harness/experiment.h"
#include "rqn/harness/io.h"
#include "rqn/harness/metrics.h"
#include "rqn/harness/reconstruction.h"
#include "rqn/harness/theorem.h"
#include "rqn/mixers/factorization.h"
#include "rqn/mixers/qmix.h"
#include "rqn/mixers/qtran.h"
#include "rqn/mixers/rqn.h"
#include "rqn/training/learner.h"
#include "rqn/training/rollout.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rqn::acceptance {
namespace {

using Table = std::vector<std::vector<double>>;

const Table kPayoff = {{8, -12, -12}, {-12, 0, 0}, {-12, 0, 0}};

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string table_text(const harness::ReconstructionTable& t) {
  std::ostringstream s;
  for (int i = 0; i < t.size(); ++i) {
    s << (i ? " | " : "");
    for (int j = 0; j < t.size(); ++j) s << (j ? " " : "") << fmt("%.2f", t.at(i, j));
  }
  return s.str();
}

cli::RunConfig config_from(const json& flags) { return cli::resolve_config(json::object(), flags); }

json matrix_flags(const std::string& algo) {
  return {{"algo", algo}, {"env", "matrix"}, {"episodes", 20000}, {"epsilon_fixed", 1.0}, {"seed", 0}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Runs shared between criteria are computed once.
class Runs {
 public:
  explicit Runs(fs::path work) : work_(std::move(work)) {}

  const fs::path& work() const { return work_; }

  // Trains through the command layer so the artifacts on disk are the ones
  // a user would get.
  fs::path cli_matrix_run(const std::string& name) {
    const fs::path dir = work_ / name;
    if (!done_cli_.contains(name)) {
      fs::remove_all(dir);
      json flags = matrix_flags("rqn");
      flags["out"] = dir.string();
      std::ostringstream log;
      if (cli::cmd_train(config_from(flags), log) != cli::kExitOk) {
        throw std::runtime_error("train failed: " + log.str());
      }
      done_cli_.insert(name);
    }
    return dir;
  }

  struct MatrixRun {
    harness::ReconstructionTable table;
    int probes = 0;
    int probe_failures = 0;
  };

  const MatrixRun& matrix(const std::string& algo) {
    auto it = matrix_.find(algo);
    if (it != matrix_.end()) return it->second;
    harness::Experiment ex(config_from(matrix_flags(algo)).experiment());
    MatrixRun run;
    ex.run([&](training::Trainer& tr, const harness::EvalRecord& rec) {
      if (const auto* m = tr.learner().qmix()) {
        ++run.probes;
        if (!harness::qmix_monotonicity_probe(*m, static_cast<std::uint64_t>(rec.episode))) ++run.probe_failures;
      }
    });
    run.table = harness::reconstruct_qtot(ex.trainer().learner(), ex.eval_env());
    return matrix_.emplace(algo, std::move(run)).first->second;
  }

  struct PpRun {
    harness::ExperimentResult result;
    double optimal = 0.0;  // mean oracle return over the evaluation episodes (single prey)
  };

  const PpRun& pp(const json& flags) {
    const std::string key = flags.dump();
    auto it = pp_.find(key);
    if (it != pp_.end()) return it->second;
    const cli::RunConfig cfg = config_from(flags);
    harness::Experiment ex(cfg.experiment());
    PpRun run;
    run.result = ex.run();
    // The oracle is defined for a single prey only.
    auto& env = dynamic_cast<envs::PredatorPrey&>(ex.eval_env());
    if (env.config().num_prey == 1) {
      for (int k = 0; k < cfg.eval_episodes; ++k) {
        env.reset(harness::eval_episode_seed(cfg.seed, k));
        run.optimal += env.optimal_return();
      }
      run.optimal /= cfg.eval_episodes;
      std::printf("  [run] %s: final smoothed %.3f (oracle %.3f)\n", key.c_str(), run.result.final_smoothed,
                  run.optimal);
    } else {
      std::printf("  [run] %s: final smoothed %.3f\n", key.c_str(), run.result.final_smoothed);
    }
    std::fflush(stdout);
    return pp_.emplace(key, std::move(run)).first->second;
  }

 private:
  fs::path work_;
  std::set<std::string> done_cli_;
  std::map<std::string, MatrixRun> matrix_;
  std::map<std::string, PpRun> pp_;
};

json pp2_flags(int seed) {
  return {{"algo", "rqn"}, {"env", "predator_prey"}, {"n_predators", 2}, {"episodes", 5000}, {"seed", seed}};
}

json pp4_flags(const std::string& algo, int seed) {
  return {{"algo", algo},      {"env", "predator_prey"}, {"n_predators", 4}, {"capture_penalty", -0.1},
          {"preset", "table2"}, {"episodes", 20000},     {"seed", seed}};
}

Verdict reconstruction_within(const harness::ReconstructionTable& t, double tol) {
  const double err = t.max_abs_error(kPayoff);
  return {err <= tol, "max |error| " + fmt("%.4f", err) + " [" + table_text(t) + "]"};
}

Verdict criterion_1(Runs& runs) {
  const fs::path dir = runs.cli_matrix_run("matrix_rqn_a");
  harness::ReconstructionTable t;
  std::ifstream in(dir / "reconstruction.csv");
  std::string line;
  std::getline(in, line);
  t.values.assign(3, std::vector<double>(3, 0.0));
  int a0, a1;
  char c;
  double v;
  while (in >> a0 >> c >> a1 >> c >> v) t.values[static_cast<size_t>(a0)][static_cast<size_t>(a1)] = v;
  return reconstruction_within(t, 0.15);
}

Verdict criterion_2(Runs& runs) { return reconstruction_within(runs.matrix("qtran").table, 0.15); }

Verdict criterion_3(Runs& runs) {
  const auto& t = runs.matrix("vdn").table;
  const bool additive = harness::is_additive(t, 1e-6);
  return {t.at(0, 0) <= 0.0 && additive,
          "(A,A) " + fmt("%.3f", t.at(0, 0)) + ", additive " + (additive ? "yes" : "no") + " [" + table_text(t) + "]"};
}

Verdict criterion_4(Runs& runs) {
  const auto& r = runs.matrix("qmix");
  const double aa = r.table.at(0, 0), bb = r.table.at(1, 1);
  const bool ok = aa < -4.0 && std::abs(bb) <= 0.5 && r.probes > 0 && r.probe_failures == 0;
  return {ok, "(A,A) " + fmt("%.3f", aa) + ", (B,B) " + fmt("%.3f", bb) + ", monotonicity probes " +
                  std::to_string(r.probes - r.probe_failures) + "/" + std::to_string(r.probes) + " [" +
                  table_text(r.table) + "]"};
}

Verdict criterion_5(Runs&) {
  const auto t0 = std::chrono::steady_clock::now();
  int failures = 0, verified = 0, instances = 0;
  std::uint64_t seed = 100;
  for (const auto& shape : harness::default_theorem_shapes()) {
    const auto r = harness::verify_theorem(shape, 1000, seed++);
    failures += r.implication_failures;
    verified += r.verified;
    instances += r.instances;
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && instances == 5000 && secs < 30.0,
          std::to_string(instances) + " instances, " + std::to_string(verified) + " verified, " +
              std::to_string(failures) + " implication failures, " + fmt("%.2f", secs) + " s"};
}

Verdict criterion_6(Runs&) {
  nn::Rng rng(6);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::uniform_int_distribution<int> agents(2, 4), actions(2, 5);
  int exceptions = 0;
  constexpr int kInstances = 10000;
  for (int k = 0; k < kInstances; ++k) {
    mixers::TabularInstance x;
    x.num_agents = agents(rng);
    x.num_actions = actions(rng);
    x.q_individual.assign(static_cast<size_t>(x.num_agents), std::vector<double>(static_cast<size_t>(x.num_actions)));
    for (auto& q : x.q_individual) {
      for (double& v : q) v = u(rng);
    }
    for (int i = 0; i < x.num_agents; ++i) x.phi.push_back(u(rng));
    int plain = 0, shifted = 0;
    double best_plain = -INFINITY, best_shifted = -INFINITY;
    for (int j = 0; j < x.joint_count(); ++j) {
      const auto a = x.decode(j);
      double s = 0.0, t = 0.0;
      for (int i = 0; i < x.num_agents; ++i) {
        const double q = x.q_individual[static_cast<size_t>(i)][static_cast<size_t>(a[static_cast<size_t>(i)])];
        s += q;
        t += q + x.phi[static_cast<size_t>(i)];
      }
      if (s > best_plain) best_plain = s, plain = j;
      if (t > best_shifted) best_shifted = t, shifted = j;
    }
    if (plain != shifted) ++exceptions;
  }
  return {exceptions == 0, std::to_string(kInstances) + " instances, " + std::to_string(exceptions) + " exceptions"};
}

nn::Matrix random_matrix(int rows, int cols, nn::Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  nn::Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  return m;
}

struct FdResult {
  double relative = 0.0;  // worst relative error above the noise floor
  double abs_diff = 0.0;  // worst absolute difference
  double grad_max = 0.0;  // largest analytic gradient entry, to show the check is not vacuous
};

// Central differences over every parameter entry. `accumulate` fills the
// analytic gradients, `value` re-evaluates the loss without recording.
FdResult finite_difference(const std::vector<nn::Parameter*>& params, const std::function<void()>& accumulate,
                           const std::function<double()>& value) {
  for (auto* p : params) p->zero_grad();
  accumulate();
  FdResult r;
  constexpr double h = 1e-5;
  for (auto* p : params) {
    const nn::Matrix analytic = p->grad();
    for (Eigen::Index k = 0; k < p->size(); ++k) {
      double& v = p->value().data()[k];
      const double saved = v;
      v = saved + h;
      const double up = value();
      v = saved - h;
      const double down = value();
      v = saved;
      const double numeric = (up - down) / (2 * h);
      const double diff = std::abs(analytic.data()[k] - numeric);
      r.abs_diff = std::max(r.abs_diff, diff);
      r.grad_max = std::max(r.grad_max, std::abs(analytic.data()[k]));
      // differences below the central-difference noise floor count as agreement
      if (diff > 1e-9) r.relative = std::max(r.relative, diff / std::max(std::abs(numeric), 1e-8));
    }
  }
  return r;
}

FdResult graph_fd(const std::vector<nn::Parameter*>& params, const std::function<nn::Var(nn::Graph&)>& f) {
  return finite_difference(
      params,
      [&] {
        nn::Graph g;
        g.backward(f(g));
      },
      [&] {
        nn::Graph g;
        return f(g).item();
      });
}

Verdict criterion_7(Runs&) {
  nn::Rng rng(7);
  std::vector<std::pair<std::string, FdResult>> results;
  auto record = [&](const std::string& name, const std::vector<nn::Parameter*>& ps,
                    const std::function<nn::Var(nn::Graph&)>& f) { results.emplace_back(name, graph_fd(ps, f)); };

  nn::Linear lin("lin", 4, 5, rng);
  const nn::Matrix x4 = random_matrix(3, 4, rng);
  record("linear", lin.parameters(), [&](nn::Graph& g) { return g.sum_all(g.tanh(lin.forward(g, g.constant(x4)))); });

  nn::GruCell gru("gru", 4, 6, rng);
  const nn::Matrix h6 = random_matrix(3, 6, rng);
  record("gru", gru.parameters(), [&](nn::Graph& g) {
    nn::Var h = g.constant(h6);
    for (int t = 0; t < 3; ++t) h = gru.forward(g, g.constant(x4), h);
    return g.sum_all(g.tanh(h));
  });

  agents::AgentNetwork agent(5, 4, 2, rng, 8);
  const nn::Matrix in = random_matrix(4, agent.input_dim(), rng);
  record("agent network", agent.parameters(), [&](nn::Graph& g) {
    nn::Var h = g.constant(agent.initial_hidden(4));
    nn::Var total;
    for (int t = 0; t < 3; ++t) {
      auto [q, next] = agent.forward(g, g.constant(in), h);
      h = next;
      total = total.valid() ? g.add(total, g.sum_all(g.tanh(q))) : g.sum_all(g.tanh(q));
    }
    return total;
  });

  mixers::RqnEstimator est(3, rng);
  const nn::Matrix feats = random_matrix(2, 6, rng);
  record("rqn estimator", est.parameters(),
         [&](nn::Graph& g) { return g.sum_all(g.tanh(est.factors(g, g.constant(feats)))); });

  mixers::QmixMixer qmix(3, 4, rng);
  const nn::Matrix q3 = random_matrix(5, 3, rng), s4 = random_matrix(5, 4, rng);
  record("qmix mixer", qmix.parameters(),
         [&](nn::Graph& g) { return g.sum_all(g.tanh(qmix.mix(g, g.constant(q3), g.constant(s4)))); });

  mixers::QtranHeads heads(6, 4, rng);
  const nn::Matrix hs = random_matrix(5, 6, rng), counts = random_matrix(5, 4, rng).cwiseAbs();
  record("qtran heads", heads.parameters(), [&](nn::Graph& g) {
    nn::Var h = g.constant(hs);
    return g.add(g.sum_all(g.tanh(heads.joint_q(g, h, g.constant(counts)))),
                 g.sum_all(g.tanh(heads.state_value(g, h))));
  });

  // The RQN loss through agents, masked mean/max features, the estimator and
  // the summed Q+ values, on a padded batch of real episodes.
  training::LearnerConfig lc;
  lc.algorithm = training::Algorithm::kRqn;
  std::vector<envs::EpisodeRecord> eps;
  nn::Rng act(71);
  std::optional<training::Learner> holder;
  for (int k = 0; k < 3; ++k) {
    // unequal lengths so the padding mask matters
    envs::PredatorPreyConfig pc;
    pc.episode_limit = 3 + 2 * k;
    envs::PredatorPrey env(pc);
    if (!holder) holder.emplace(lc, env.spec(), 70);
    eps.push_back(training::run_episode(env, holder->agent(), 700 + k, [](int) { return 1.0; }, act).episode);
  }
  training::Learner& learner = *holder;
  std::vector<const envs::EpisodeRecord*> ptrs;
  for (auto& e : eps) ptrs.push_back(&e);
  const auto batch = training::make_batch(ptrs, learner.agent());
  results.emplace_back("rqn loss path",
                       finite_difference(
                           learner.parameters(), [&] { learner.compute_loss(batch, true); },
                           [&] { return learner.compute_loss(batch, false).loss; }));

  bool ok = true;
  std::string detail;
  for (const auto& [name, r] : results) {
    ok = ok && r.relative <= 1e-4 && r.grad_max > 0.0;
    detail += (detail.empty() ? "" : ", ") + name + " " + fmt("%.1e", r.relative) + " (|diff| " +
              fmt("%.0e", r.abs_diff) + ", |grad| " + fmt("%.2g", r.grad_max) + ")";
  }
  return {ok, "worst relative error: " + detail};
}

Verdict criterion_8(Runs&) {
  json flags = {{"algo", "rqn"}, {"env", "predator_prey"}, {"n_predators", 2}, {"episodes", 600}, {"seed", 8}};
  harness::Experiment ex(config_from(flags).experiment());
  ex.run();
  const auto& learner = ex.trainer().learner();
  const std::uint64_t in_targets = learner.estimator_calls_in_targets();
  const std::uint64_t total = learner.rqn()->forward_calls();
  const int steps = ex.trainer().train_steps();
  return {in_targets == 0 && total > 0 && steps > 0,
          std::to_string(steps) + " train steps, " + std::to_string(total) + " estimator calls, " +
              std::to_string(in_targets) + " during target computation"};
}

struct Pp2Summary {
  std::vector<int> passing;
  std::string detail;
};

Pp2Summary pp2_summary(Runs& runs) {
  Pp2Summary s;
  for (int seed = 0; seed < 3; ++seed) {
    const auto& r = runs.pp(pp2_flags(seed));
    const double need = 0.9 * r.optimal;
    const bool ok = r.result.final_smoothed >= need;
    if (ok) s.passing.push_back(seed);
    s.detail += (seed ? "; " : "") + std::string("seed ") + std::to_string(seed) + " " +
                fmt("%.3f", r.result.final_smoothed) + " vs " + fmt("%.3f", need) + (ok ? " ok" : " low");
  }
  return s;
}

Verdict criterion_9(Runs& runs) {
  const Pp2Summary s = pp2_summary(runs);
  return {s.passing.size() >= 2, std::to_string(s.passing.size()) + "/3 seeds reach 0.9 x oracle: " + s.detail};
}

Verdict criterion_10(Runs& runs) {
  const Pp2Summary s = pp2_summary(runs);
  // With no passing seed the criterion fails, but every seed is still reported.
  const std::vector<int> seeds = s.passing.empty() ? std::vector<int>{0, 1, 2} : s.passing;
  bool ok = !s.passing.empty();
  std::string detail = s.passing.empty() ? "no seed reaches the learning threshold; for reference: " : "";
  for (int seed : seeds) {
    const auto st = harness::phi_stability(runs.pp(pp2_flags(seed)).result.phi);
    for (size_t i = 0; i < st.ratio.size(); ++i) {
      const bool agent_ok = st.ratio[i] < 0.1 && std::abs(st.slope[i]) < 0.01 * st.range[i];
      ok = ok && agent_ok;
      detail += (detail.empty() || detail.back() == ' ' ? "" : "; ") + std::string("seed ") + std::to_string(seed) + " agent " +
                std::to_string(i) + " ratio " + fmt("%.4f", st.ratio[i]) + " slope " + fmt("%.2e", st.slope[i]) +
                " range " + fmt("%.3f", st.range[i]);
    }
  }
  return {ok, detail};
}

Verdict criterion_11(Runs& runs) {
  int wins = 0;
  std::string detail;
  for (int seed = 0; seed < 3; ++seed) {
    const double rqn = runs.pp(pp4_flags("rqn", seed)).result.final_smoothed;
    const double qmix = runs.pp(pp4_flags("qmix", seed)).result.final_smoothed;
    if (rqn > qmix) ++wins;
    detail += (seed ? "; " : "") + std::string("seed ") + std::to_string(seed) + " rqn " + fmt("%.3f", rqn) +
              " qmix " + fmt("%.3f", qmix);
  }
  return {wins >= 2, std::to_string(wins) + "/3 seeds favour rqn: " + detail};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict criterion_12(Runs& runs) {
  const fs::path a = runs.cli_matrix_run("matrix_rqn_a");
  const fs::path b = runs.cli_matrix_run("matrix_rqn_b");
  std::string detail;
  bool ok = true;
  for (const char* f : {"metrics.csv", "reconstruction.csv"}) {
    const std::string x = slurp(a / f), y = slurp(b / f);
    const bool same = !x.empty() && x == y;
    ok = ok && same;
    detail += (detail.empty() ? "" : ", ") + std::string(f) + (same ? " identical" : " differs") + " (" +
              std::to_string(x.size()) + " bytes)";
  }
  return {ok, detail};
}

}  // namespace
}  // namespace rqn::acceptance

int main(int argc, char** argv) {
  using namespace rqn::acceptance;
  const std::vector<std::function<Verdict(Runs&)>> criteria = {
      criterion_1, criterion_2, criterion_3, criterion_4,  criterion_5,  criterion_6,
      criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12};

  fs::path work = fs::temp_directory_path() / "rqn_acceptance";
  std::vector<int> selected;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "--work" && k + 1 < argc) {
      work = argv[++k];
    } else {
      const int n = std::stoi(arg);
      if (n < 1 || n > static_cast<int>(criteria.size())) {
        std::fprintf(stderr, "unknown criterion %d\n", n);
        return 2;
      }
      selected.push_back(n);
    }
  }
  if (selected.empty()) {
    for (int n = 1; n <= static_cast<int>(criteria.size()); ++n) selected.push_back(n);
  }
  fs::create_directories(work);

  Runs runs(work);
  int failed = 0;
  for (int n : selected) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[static_cast<size_t>(n - 1)](runs);
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("criterion %d: %s  %s  (%.1f s)\n", n, v.pass ? "PASS" : "FAIL", v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

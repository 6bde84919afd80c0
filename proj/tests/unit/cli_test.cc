#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "rqn/cli/commands.h"
#include "rqn/cli/run_config.h"
#include "rqn/harness/io.h"

using namespace rqn;
using nlohmann::json;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rqn_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

int run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rqn");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config precedence and presets") {
  const auto d = cli::resolve_config(json::object(), json::object());
  CHECK(d.buffer == 500);  // matrix default
  CHECK(d.gamma == 1.0);
  CHECK(d.batch == 32);
  CHECK(d.eps_min == 0.05);
  CHECK(d.eps_anneal == 50000);
  CHECK(d.target_interval == 200);

  const auto pp = cli::resolve_config(json::object(), {{"env", "predator_prey"}});
  CHECK(pp.buffer == 5000);
  CHECK(pp.gamma == 0.99);

  const auto t2 = cli::resolve_config(json::object(), {{"algo", "qmix"}, {"preset", "table2"}});
  CHECK(t2.buffer == 100000);
  CHECK(t2.eps_min == 0.1);
  CHECK(t2.eps_anneal == 2000000);

  const auto layered = cli::resolve_config({{"buffer", 700}, {"seed", 4}}, {{"buffer", 900}});
  CHECK(layered.buffer == 900);
  CHECK(layered.seed == 4);

  const auto file_over_preset = cli::resolve_config({{"preset", "table2"}, {"eps_min", 0.2}}, json::object());
  CHECK(file_over_preset.eps_min == 0.2);
  CHECK(file_over_preset.buffer == 100000);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(cli::resolve_config({{"bufer", 5}}, json::object()), cli::ConfigError);
  CHECK_THROWS_AS(cli::resolve_config(json::object(), {{"algo", "coma"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::resolve_config(json::object(), {{"env", "smac"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::resolve_config(json::object(), {{"preset", "table3"}}), cli::ConfigError);
  CHECK_THROWS_AS(cli::resolve_config({{"batch", "many"}}, json::object()), cli::ConfigError);
  CHECK_THROWS_AS(cli::resolve_config({{"epsilon_fixed", 2.0}}, json::object()), cli::ConfigError);
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"train", "--algo", "coma", "--env", "matrix"}) == cli::kExitConfig);
  CHECK(run_cli({"train", "--algo", "rqn", "--env", "mars"}) == cli::kExitConfig);
  CHECK(run_cli({"train", "--bogus-flag"}) == cli::kExitConfig);
  CHECK(run_cli({"aggregate", "only_one"}) == cli::kExitConfig);
  CHECK(run_cli({"verify-theorem", "--instances", "50"}) == cli::kExitOk);
}

TEST_CASE("train, manifest round-trip, evaluate, reconstruct, aggregate") {
  const auto root = temp_dir("flow");
  const std::string a = (root / "a").string(), b = (root / "b").string(), c = (root / "c").string();
  const std::vector<std::string> base = {"train", "--algo", "rqn", "--env", "matrix", "--episodes", "300",
                                         "--epsilon-fixed", "1", "--seed", "3"};
  auto with_out = [&](const std::string& out) {
    auto v = base;
    v.push_back("--out");
    v.push_back(out);
    return v;
  };
  REQUIRE(run_cli(with_out(a)) == cli::kExitOk);
  for (const char* f : {"metrics.csv", "phi.csv", "params.json", "run.json", "reconstruction.csv"}) {
    CHECK(std::filesystem::exists(std::filesystem::path(a) / f));
  }
  CHECK(slurp(std::filesystem::path(a) / "metrics.csv").rfind("episode,eval_reward\n", 0) == 0);

  // same seed, identical bytes
  REQUIRE(run_cli(with_out(b)) == cli::kExitOk);
  CHECK(slurp(std::filesystem::path(a) / "metrics.csv") == slurp(std::filesystem::path(b) / "metrics.csv"));
  CHECK(slurp(std::filesystem::path(a) / "params.json") == slurp(std::filesystem::path(b) / "params.json"));

  // re-run from the manifest, only the output moved
  REQUIRE(run_cli({"train", "--config", a + "/run.json", "--out", c}) == cli::kExitOk);
  CHECK(slurp(std::filesystem::path(a) / "metrics.csv") == slurp(std::filesystem::path(c) / "metrics.csv"));
  CHECK(slurp(std::filesystem::path(a) / "reconstruction.csv") ==
        slurp(std::filesystem::path(c) / "reconstruction.csv"));

  const std::string before = slurp(std::filesystem::path(a) / "reconstruction.csv");
  CHECK(run_cli({"reconstruct", "--run", a}) == cli::kExitOk);
  CHECK(slurp(std::filesystem::path(a) / "reconstruction.csv") == before);
  CHECK(run_cli({"evaluate", "--run", a}) == cli::kExitOk);

  const std::string agg = (root / "agg.csv").string();
  CHECK(run_cli({"aggregate", a, b, c, "--out", agg}) == cli::kExitOk);
  const std::string text = slurp(agg);
  CHECK(text.rfind("episode,mean,ci95\n100,", 0) == 0);
  CHECK(text.find(",0\n") != std::string::npos);  // identical runs, zero interval

  // a predator-prey run cannot be reconstructed
  const std::string p = (root / "p").string();
  REQUIRE(run_cli({"train", "--algo", "vdn", "--env", "predator_prey", "--episodes", "0", "--out", p}) ==
          cli::kExitOk);
  CHECK(run_cli({"reconstruct", "--run", p}) == cli::kExitConfig);
  std::filesystem::remove_all(root);
}

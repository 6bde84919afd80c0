#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "rqn/envs/factory.h"
#include "rqn/envs/grid.h"
#include "rqn/envs/matrix_game.h"
#include "rqn/harness/evaluation.h"
#include "rqn/harness/experiment.h"
#include "rqn/harness/io.h"
#include "rqn/harness/metrics.h"
#include "rqn/harness/reconstruction.h"
#include "rqn/harness/theorem.h"

using namespace rqn;
using harness::PhiSnapshot;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("rqn_unit_" + name);
  std::filesystem::remove_all(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("smooth_cma10") {
  CHECK(harness::smooth_cma10({3, 3, 3}) == std::vector<double>{3, 3, 3});
  CHECK(harness::smooth_cma10({0, 10}) == std::vector<double>{0, 5});
  std::vector<double> s(10, 1.0);
  s.resize(20, 0.0);
  const auto out = harness::smooth_cma10(s);
  CHECK(out[19] == 0.0);
  CHECK(out[14] == doctest::Approx(0.5));
  CHECK_THROWS(harness::smooth_cma10({}));
}

TEST_CASE("aggregate_seeds") {
  const auto same = harness::aggregate_seeds({{1, 2}, {1, 2}, {1, 2}});
  CHECK(same.half_width == std::vector<double>{0, 0});
  const auto a = harness::aggregate_seeds({{0, 0}, {2, 2}, {4, 4}});
  CHECK(a.mean == std::vector<double>{2, 2});
  // sample sd of {0, 2, 4} is 2
  CHECK(a.half_width[0] == doctest::Approx(1.96 * 2.0 / std::sqrt(3.0)));
  CHECK_THROWS(harness::aggregate_seeds({{1, 2}, {1}}));
  CHECK_THROWS(harness::aggregate_seeds({{1, 2}}));
}

TEST_CASE("phi_stability") {
  std::vector<PhiSnapshot> flat;
  for (int k = 0; k < 30; ++k) flat.push_back({k * 100, {1.5, -2.0}});
  const auto f = harness::phi_stability(flat);
  CHECK(f.ratio == std::vector<double>{0, 0});
  CHECK(f.slope[0] == doctest::Approx(0.0));

  std::vector<PhiSnapshot> drift;
  for (int k = 0; k < 1000; ++k) drift.push_back({k, {static_cast<double>(k) / 999.0}});
  const auto d = harness::phi_stability(drift);
  CHECK(d.ratio[0] == doctest::Approx(0.1 * std::sqrt(1.0 / 12.0)).epsilon(0.01));
  CHECK(d.slope[0] == doctest::Approx(1.0 / 999.0));

  CHECK_THROWS(harness::phi_stability(std::vector<PhiSnapshot>(10, PhiSnapshot{0, {1.0}})));
}

TEST_CASE("evaluate is greedy, repeatable and read-only") {
  training::LearnerConfig lc;
  lc.algorithm = training::Algorithm::kVdn;
  lc.gamma = 1.0;
  training::Learner l(lc, envs::MatrixGame().spec(), 0);
  // both agents greedy on A
  nn::Matrix b = nn::Matrix::Zero(1, 3);
  b(0, 0) = 100.0;
  l.agent().output_layer().bias().assign(b);
  envs::MatrixGame g;
  CHECK(harness::evaluate(l.agent(), g, 0) == 8.0);

  auto pp = envs::make_environment({.name = "predator_prey"});
  training::Learner lp(lc, pp->spec(), 1);
  std::vector<nn::Matrix> before;
  for (auto* p : lp.parameters()) before.push_back(p->value());
  const double x = harness::evaluate(lp.agent(), *pp, 3);
  CHECK(x == harness::evaluate(lp.agent(), *pp, 3));
  size_t k = 0;
  for (auto* p : lp.parameters()) CHECK(p->value() == before[k++]);
}

TEST_CASE("untrained policy on predator prey pays the step penalty") {
  // a policy that only ever stays never captures
  training::LearnerConfig lc;
  lc.algorithm = training::Algorithm::kVdn;
  auto pp = envs::make_environment({.name = "predator_prey"});
  training::Learner l(lc, pp->spec(), 2);
  nn::Matrix b = nn::Matrix::Zero(1, 6);
  b(0, envs::kStay) = 100.0;
  l.agent().output_layer().weight().assign(nn::Matrix::Zero(6, 64));
  l.agent().output_layer().bias().assign(b);
  CHECK(harness::evaluate(l.agent(), *pp, 0) == doctest::Approx(2 * -0.01 * 50));
}

TEST_CASE("reconstruction tables") {
  envs::MatrixGame g;
  for (auto a : {training::Algorithm::kVdn, training::Algorithm::kQmix, training::Algorithm::kQtran,
                 training::Algorithm::kRqn}) {
    training::LearnerConfig lc;
    lc.algorithm = a;
    lc.gamma = 1.0;
    training::Learner l(lc, g.spec(), 9);
    const auto random_table = harness::reconstruct_qtot(l, g);
    CHECK(random_table.size() == 3);
    if (a == training::Algorithm::kVdn) CHECK(harness::is_additive(random_table));
    for (auto* p : l.parameters()) p->assign(nn::Matrix::Zero(p->value().rows(), p->value().cols()));
    const auto t = harness::reconstruct_qtot(l, g);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) CHECK(t.at(i, j) == 0.0);
    }
  }
  training::LearnerConfig lc;
  auto pp = envs::make_environment({.name = "predator_prey"});
  training::Learner l(lc, pp->spec(), 0);
  CHECK_THROWS_AS(harness::reconstruct_qtot(l, *pp), envs::EnvError);

  harness::ReconstructionTable payoff{{{8, -12, -12}, {-12, 0, 0}, {-12, 0, 0}}};
  CHECK_FALSE(harness::is_additive(payoff));
}

TEST_CASE("experiment cadence and phi trace") {
  harness::ExperimentConfig x;
  x.env.name = "matrix";
  x.episodes = 250;
  x.trainer.learner.algorithm = training::Algorithm::kRqn;
  x.trainer.learner.gamma = 1.0;
  x.trainer.buffer_capacity = 100;
  x.trainer.epsilon_fixed = 1.0;
  harness::Experiment e(x);
  int hooks = 0;
  const auto r = e.run([&](training::Trainer&, const harness::EvalRecord&) { ++hooks; });
  CHECK(r.evals.size() == 2);
  CHECK(r.evals[1].episode == 200);
  CHECK(hooks == 2);
  CHECK(r.phi.size() == 2);
  CHECK(r.phi[0].phi.size() == 2);
  CHECK(r.final_smoothed == doctest::Approx((r.evals[0].eval_reward + r.evals[1].eval_reward) / 2));
}

TEST_CASE("qmix monotonicity probe") {
  nn::Rng rng(1);
  mixers::QmixMixer m(2, 1, rng);
  CHECK(harness::qmix_monotonicity_probe(m, 0));
}

TEST_CASE("csv and parameter files round-trip") {
  const auto dir = temp_dir("io");
  const std::vector<harness::EvalRecord> evals = {{100, 0.1}, {200, -1.0 / 3.0}};
  harness::write_metrics_csv(dir / "metrics.csv", evals);
  CHECK(slurp(dir / "metrics.csv").rfind("episode,eval_reward\n100,0.1\n", 0) == 0);
  const auto back = harness::read_metrics_csv(dir / "metrics.csv");
  CHECK(back[1].eval_reward == -1.0 / 3.0);

  const std::vector<PhiSnapshot> phi = {{100, {0.25, -1.5}}, {200, {0.125, 3.0}}};
  harness::write_phi_csv(dir / "phi.csv", phi);
  CHECK(slurp(dir / "phi.csv").rfind("episode,agent,phi\n100,0,0.25\n100,1,-1.5\n", 0) == 0);
  CHECK(harness::read_phi_csv(dir / "phi.csv")[1].phi == std::vector<double>{0.125, 3.0});

  harness::write_reconstruction_csv(dir / "r.csv", {{{8, -12}, {-12, 0}}});
  CHECK(slurp(dir / "r.csv") == "a0,a1,qtot\n0,0,8\n0,1,-12\n1,0,-12\n1,1,0\n");

  nn::Rng rng(3);
  nn::Linear a("a", 3, 2, rng), b("a", 3, 2, rng);
  harness::save_parameters(dir / "p.json", a.parameters());
  harness::load_parameters(dir / "p.json", b.parameters());
  CHECK(a.weight().value() == b.weight().value());
  CHECK(a.bias().value() == b.bias().value());
  nn::Linear wrong("a", 4, 2, rng);
  CHECK_THROWS(harness::load_parameters(dir / "p.json", wrong.parameters()));
  std::filesystem::remove_all(dir);
}

TEST_CASE("theorem sweep") {
  for (const auto& s : harness::default_theorem_shapes()) {
    const auto r = harness::verify_theorem(s, 200, 1);
    CHECK(r.implication_failures == 0);
    CHECK(r.verified >= 100);
  }
}

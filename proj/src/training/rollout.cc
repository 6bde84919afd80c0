#include "rqn/training/rollout.h"

#include "rqn/agents/policy.h"

namespace rqn::training {

Rollout run_episode(envs::Environment& env, const agents::AgentNetwork& agent, std::uint64_t env_seed,
                    const EpsilonFn& epsilon, nn::Rng& rng) {
  const envs::DecPomdpSpec& spec = env.spec();
  envs::StepResult step = env.reset(env_seed);
  Rollout out{envs::EpisodeRecord(spec, step), {}};

  const int n = spec.num_agents;
  std::vector<int> last(static_cast<size_t>(n), -1);
  std::vector<int> joint(static_cast<size_t>(n), 0);
  nn::Matrix hidden = agent.initial_hidden(n);
  for (int t = 0; !step.terminal; ++t) {
    auto fwd = agent.forward(agent.make_inputs(step.observations, last), hidden);
    hidden = std::move(fwd.hidden);
    const double eps = epsilon ? epsilon(t) : 0.0;
    std::vector<double> chosen(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
      std::span<const double> q(fwd.q.row(i).data(), static_cast<size_t>(spec.num_actions));
      const int a = agents::select_action(q, eps, rng);
      joint[static_cast<size_t>(i)] = a;
      chosen[static_cast<size_t>(i)] = q[static_cast<size_t>(a)];
    }
    step = env.step(joint);
    out.episode.append(joint, step);
    out.chosen_q.push_back(std::move(chosen));
    last = joint;
  }
  return out;
}

}  // namespace rqn::training

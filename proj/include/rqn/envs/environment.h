#ifndef RQN_ENVS_ENVIRONMENT_H_
#define RQN_ENVS_ENVIRONMENT_H_

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rqn::envs {

class EnvError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Static description of a cooperative Dec-POMDP.
struct DecPomdpSpec {
  int num_agents = 1;
  int num_actions = 1;
  int obs_dim = 1;
  int state_dim = 1;
  int episode_limit = 1;
  double gamma = 0.99;

  void validate() const;
};

struct StepResult {
  std::vector<std::vector<double>> observations;  // one per agent
  std::vector<double> state;                      // global state, for centralised mixers only
  double reward = 0.0;                            // team reward, sum of agent_rewards
  std::vector<double> agent_rewards;              // per-agent credited components
  bool terminal = false;                          // episode over (either cause)
  bool time_limit = false;                        // ended only because the step limit was hit
};

// Base class for all built-in environments. step() validates the joint action
// and enforces the step limit; subclasses implement the dynamics.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string name() const = 0;
  const DecPomdpSpec& spec() const { return spec_; }

  StepResult reset(std::uint64_t seed);
  StepResult step(std::span<const int> joint_action);

  int steps_taken() const { return steps_; }
  bool done() const { return done_; }

 protected:
  explicit Environment(DecPomdpSpec spec);

  virtual void do_reset(std::uint64_t seed) = 0;
  // Applies one joint action, writing per-agent rewards. Returns true when the
  // task itself has ended (independent of the step limit).
  virtual bool do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) = 0;
  virtual std::vector<double> observation(int agent) const = 0;
  virtual std::vector<double> state() const = 0;

 private:
  StepResult snapshot() const;

  DecPomdpSpec spec_;
  int steps_ = 0;
  bool done_ = true;
};

}  // namespace rqn::envs

#endif  // RQN_ENVS_ENVIRONMENT_H_

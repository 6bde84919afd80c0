#ifndef RQN_HARNESS_METRICS_H_
#define RQN_HARNESS_METRICS_H_

#include <vector>

namespace rqn::harness {

struct EvalRecord {
  int episode = 0;  // training episodes completed when evaluated
  double eval_reward = 0.0;
};

struct PhiSnapshot {
  int episode = 0;
  std::vector<double> phi;  // one per agent
};

// Element k is the mean of the last min(k + 1, 10) raw values.
std::vector<double> smooth_cma10(const std::vector<double>& series);

struct SeedAggregate {
  std::vector<double> mean;
  std::vector<double> half_width;  // 1.96 * sample sd / sqrt(n)
};

// Pointwise mean and normal-approximation 95% interval over equally long runs.
SeedAggregate aggregate_seeds(const std::vector<std::vector<double>>& runs);

struct PhiStability {
  std::vector<double> ratio;  // tail std / whole-run range, per agent
  std::vector<double> slope;  // least-squares slope over the tail, per snapshot
  std::vector<double> range;  // whole-run max - min, per agent
};

// Needs at least 20 snapshots. The tail is the last ceil(tail_fraction * n)
// snapshots (at least 2). Agents whose trace never moves get ratio 0.
PhiStability phi_stability(const std::vector<PhiSnapshot>& trace, double tail_fraction = 0.1);

}  // namespace rqn::harness

#endif  // RQN_HARNESS_METRICS_H_

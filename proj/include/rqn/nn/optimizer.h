#ifndef RQN_NN_OPTIMIZER_H_
#define RQN_NN_OPTIMIZER_H_

#include <vector>

#include "rqn/nn/tensor.h"

namespace rqn::nn {

struct OptimizerOptions {
  double learning_rate = 5e-4;
  double alpha = 0.99;    // RMSProp smoothing of squared gradients
  double epsilon = 1e-5;
  double clip_norm = 10.0;  // <= 0 disables clipping
  bool plain_sgd = false;
};

// RMSProp (or plain SGD) with global gradient-norm clipping. Gradients are
// cleared after every step.
class Optimizer {
 public:
  Optimizer(std::vector<Parameter*> params, OptimizerOptions options);

  // Applies one update. Returns the global gradient norm before clipping.
  // Throws DivergenceError when a gradient or an updated value is not finite.
  double step();
  void zero_grad();

  const OptimizerOptions& options() const { return options_; }
  const std::vector<Matrix>& accumulators() const { return square_avg_; }
  const std::vector<Parameter*>& parameters() const { return params_; }

 private:
  std::vector<Parameter*> params_;
  std::vector<Matrix> square_avg_;
  OptimizerOptions options_;
};

}  // namespace rqn::nn

#endif  // RQN_NN_OPTIMIZER_H_

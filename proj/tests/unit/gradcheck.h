#ifndef RQN_TESTS_GRADCHECK_H_
#define RQN_TESTS_GRADCHECK_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "rqn/nn/graph.h"

namespace rqn::testing {

// Largest |analytic - numeric| / max(|numeric|, 1e-8) over every entry of
// every parameter, using central differences. `loss` must build a fresh
// graph and return a 1x1 node.
inline double max_relative_error(const std::vector<nn::Parameter*>& params,
                                 const std::function<nn::Var(nn::Graph&)>& loss, double h = 1e-5) {
  for (auto* p : params) p->zero_grad();
  {
    nn::Graph g;
    g.backward(loss(g));
  }
  double worst = 0.0;
  for (auto* p : params) {
    const nn::Matrix analytic = p->grad();
    for (Eigen::Index k = 0; k < p->size(); ++k) {
      double& v = p->value().data()[k];
      const double saved = v;
      v = saved + h;
      double up;
      {
        nn::Graph g;
        up = loss(g).item();
      }
      v = saved - h;
      double down;
      {
        nn::Graph g;
        down = loss(g).item();
      }
      v = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = analytic.data()[k];
      // differences below the central-difference noise floor count as agreement
      const double err = std::abs(a - numeric) / std::max(std::abs(numeric), 1e-8);
      if (std::abs(a - numeric) > 1e-9) worst = std::max(worst, err);
    }
  }
  return worst;
}

}  // namespace rqn::testing

#endif  // RQN_TESTS_GRADCHECK_H_

#include "rqn/nn/optimizer.h"

#include <cmath>
#include <string>

namespace rqn::nn {

Optimizer::Optimizer(std::vector<Parameter*> params, OptimizerOptions options)
    : params_(std::move(params)), options_(options) {
  square_avg_.reserve(params_.size());
  for (Parameter* p : params_) {
    square_avg_.push_back(Matrix::Zero(p->value().rows(), p->value().cols()));
  }
}

double Optimizer::step() {
  double sq = 0.0;
  for (Parameter* p : params_) {
    if (!p->requires_grad()) continue;
    if (!p->grad().allFinite()) {
      throw DivergenceError("non-finite gradient in parameter '" + p->name() + "'");
    }
    sq += p->grad().squaredNorm();
  }
  const double norm = std::sqrt(sq);
  double scale = 1.0;
  if (options_.clip_norm > 0.0 && norm > options_.clip_norm) scale = options_.clip_norm / norm;

  for (size_t i = 0; i < params_.size(); ++i) {
    Parameter& p = *params_[i];
    if (!p.requires_grad()) continue;
    const Matrix g = p.grad() * scale;
    if (options_.plain_sgd) {
      p.value() -= options_.learning_rate * g;
    } else {
      Matrix& v = square_avg_[i];
      v = options_.alpha * v + (1.0 - options_.alpha) * g.cwiseProduct(g);
      p.value().array() -= options_.learning_rate * g.array() / (v.array().sqrt() + options_.epsilon);
    }
    if (!p.value().allFinite()) {
      throw DivergenceError("parameter '" + p.name() + "' became non-finite after update");
    }
  }
  zero_grad();
  return norm;
}

void Optimizer::zero_grad() {
  for (Parameter* p : params_) p->zero_grad();
}

}  // namespace rqn::nn

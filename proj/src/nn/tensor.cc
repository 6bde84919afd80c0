#include "rqn/nn/tensor.h"

#include <cmath>

namespace rqn::nn {

Parameter::Parameter(std::string name, Matrix value, bool requires_grad)
    : name_(std::move(name)),
      value_(std::move(value)),
      grad_(Matrix::Zero(value_.rows(), value_.cols())),
      requires_grad_(requires_grad) {}

void Parameter::assign(const Matrix& value) {
  if (value.rows() != value_.rows() || value.cols() != value_.cols()) {
    throw ShapeError("parameter '" + name_ + "': assign with mismatched shape");
  }
  value_ = value;
}

Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in, Rng& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
  std::uniform_real_distribution<double> dist(-bound, bound);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = dist(rng);
  return m;
}

bool all_finite(const Matrix& m) { return m.allFinite(); }

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  // splitmix64 over the combined word
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace rqn::nn

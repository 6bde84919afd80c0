#ifndef RQN_NN_TENSOR_H_
#define RQN_NN_TENSOR_H_

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rqn::nn {

// Row-major so that one row is one sample and reshapes are free.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Rng = std::mt19937_64;

// Raised when a value or gradient stops being finite.
class DivergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A trainable tensor. The gradient always has the shape of the value.
class Parameter {
 public:
  Parameter() = default;
  Parameter(std::string name, Matrix value, bool requires_grad = true);

  const std::string& name() const { return name_; }
  const Matrix& value() const { return value_; }
  Matrix& value() { return value_; }
  const Matrix& grad() const { return grad_; }
  Matrix& grad() { return grad_; }
  bool requires_grad() const { return requires_grad_; }

  std::vector<Eigen::Index> shape() const { return {value_.rows(), value_.cols()}; }
  Eigen::Index size() const { return value_.size(); }

  void zero_grad() { grad_.setZero(); }
  // Replaces the values, keeping the shape. Used for target-network copies.
  void assign(const Matrix& value);

 private:
  std::string name_;
  Matrix value_;
  Matrix grad_;
  bool requires_grad_ = true;
};

// Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
Matrix uniform_init(Eigen::Index rows, Eigen::Index cols, Eigen::Index fan_in, Rng& rng);

bool all_finite(const Matrix& m);

// Derives an independent 64-bit seed from a base seed and a stream tag.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace rqn::nn

#endif  // RQN_NN_TENSOR_H_

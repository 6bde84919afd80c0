#ifndef RQN_NN_GRAPH_H_
#define RQN_NN_GRAPH_H_

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rqn/nn/tensor.h"

namespace rqn::nn {

class Graph;

// Handle to a node recorded on a Graph. Cheap to copy; only valid while the
// owning graph is alive.
class Var {
 public:
  Var() = default;

  const Matrix& value() const;
  Eigen::Index rows() const { return value().rows(); }
  Eigen::Index cols() const { return value().cols(); }
  // Scalar value of a 1x1 node.
  double item() const;

  Graph* graph() const { return graph_; }
  int id() const { return id_; }
  bool valid() const { return graph_ != nullptr; }

 private:
  friend class Graph;
  Var(Graph* graph, int id) : graph_(graph), id_(id) {}

  Graph* graph_ = nullptr;
  int id_ = -1;
};

// Reverse-mode tape. Every op evaluates eagerly and records how to push the
// output gradient back to its inputs. A graph supports exactly one backward.
class Graph {
 public:
  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  // Leaf that never receives a gradient.
  Var constant(Matrix value);
  // Leaf bound to a parameter; registering the same parameter twice returns
  // the same node. Gradients are accumulated into Parameter::grad().
  Var param(Parameter& p);

  // x * w^T, the usual dense-layer product with w stored as out x in.
  Var matmul_nt(Var x, Var w);
  // x + b with b a 1 x cols row broadcast over rows.
  Var add_row(Var x, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  // scale * x + shift, elementwise.
  Var affine(Var x, double scale, double shift);
  Var relu(Var x);
  Var elu(Var x);
  Var sigmoid(Var x);
  Var tanh(Var x);
  Var abs(Var x);
  // min(x, hi) elementwise; gradient passes only where x < hi.
  Var clamp_max(Var x, double hi);

  Var concat_cols(std::span<const Var> parts);
  Var slice_cols(Var x, Eigen::Index start, Eigen::Index count);
  // Row-major reinterpretation; sizes must agree.
  Var reshape(Var x, Eigen::Index rows, Eigen::Index cols);
  // rows x 1 column of per-row sums.
  Var sum_cols(Var x);
  // 1 x 1 sum of every element.
  Var sum_all(Var x);
  // Picks x(r, index[r]) for each row; result rows x 1.
  Var gather_cols(Var x, std::span<const int> index);
  // Sums consecutive blocks of `group` rows: (rows/group) x cols.
  Var group_sum_rows(Var x, Eigen::Index group);
  // Multiplies row r by weights[r].
  Var scale_rows(Var x, const Vector& weights);
  // Elementwise maximum across xs, considering xs[k] only on rows where
  // masks[k](r) > 0. Gradient routes to the first maximising entry.
  Var masked_max(std::span<const Var> xs, std::span<const Vector> masks);
  // Per-row product of a 1 x n row of x with the n x m matrix stored row-major
  // in the matching row of w: result B x m.
  Var rowwise_matmul(Var x, Var w, Eigen::Index n, Eigen::Index m);
  // 1 x 1 sum over rows of mask(r) * (pred(r) - target(r))^2 for B x 1 pred.
  Var masked_sq_error(Var pred, const Vector& target, const Vector& mask);
  // 1 x 1 mean squared difference over all elements.
  Var mse(Var pred, const Matrix& target);

  // Populates gradients of `loss` (a 1x1 node) in every reachable parameter.
  void backward(Var loss);

  const Matrix& value(int id) const { return nodes_[static_cast<size_t>(id)].value; }
  size_t size() const { return nodes_.size(); }
  bool consumed() const { return consumed_; }

 private:
  struct Node {
    Matrix value;
    Matrix grad;
    bool needs_grad = false;
    Parameter* param = nullptr;
    std::function<void(Graph&, const Matrix&)> backward;
  };

  Var push(Matrix value, bool needs_grad, std::function<void(Graph&, const Matrix&)> backward);
  bool needs(Var v) const { return nodes_[static_cast<size_t>(v.id_)].needs_grad; }
  void check_owner(Var v) const;
  template <typename Expr>
  void accumulate(int id, const Expr& g);

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, int> param_ids_;
  bool consumed_ = false;
};

Var operator+(Var a, Var b);
Var operator-(Var a, Var b);
Var operator*(Var a, Var b);

}  // namespace rqn::nn

#endif  // RQN_NN_GRAPH_H_

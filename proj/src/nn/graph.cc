#include "rqn/nn/graph.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rqn::nn {

const Matrix& Var::value() const {
  if (graph_ == nullptr) throw std::logic_error("Var: use of an unbound handle");
  return graph_->value(id_);
}

double Var::item() const {
  const Matrix& v = value();
  if (v.size() != 1) throw ShapeError("Var::item on a non-scalar node");
  return v(0, 0);
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

std::string dims(const Matrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

template <typename Expr>
void Graph::accumulate(int id, const Expr& g) {
  Node& n = nodes_[static_cast<size_t>(id)];
  if (!n.needs_grad) return;
  if (n.grad.size() == 0) {
    n.grad = g;
  } else {
    n.grad += g;
  }
}

void Graph::check_owner(Var v) const {
  if (v.graph_ != this) throw std::logic_error("Graph: Var belongs to another graph");
}

Var Graph::push(Matrix value, bool needs_grad,
                std::function<void(Graph&, const Matrix&)> backward) {
  if (consumed_) throw std::logic_error("Graph: recording after backward");
  Node n;
  n.value = std::move(value);
  n.needs_grad = needs_grad;
  if (needs_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return Var(this, static_cast<int>(nodes_.size()) - 1);
}

Var Graph::constant(Matrix value) { return push(std::move(value), false, nullptr); }

Var Graph::param(Parameter& p) {
  auto it = param_ids_.find(&p);
  if (it != param_ids_.end()) return Var(this, it->second);
  Var v = push(p.value(), p.requires_grad(), nullptr);
  nodes_.back().param = &p;
  param_ids_.emplace(&p, v.id_);
  return v;
}

Var Graph::matmul_nt(Var x, Var w) {
  check_owner(x);
  check_owner(w);
  const Matrix& xv = x.value();
  const Matrix& wv = w.value();
  require(xv.cols() == wv.cols(), "matmul_nt: input " + dims(xv) + " vs weight " + dims(wv));
  const int xi = x.id_, wi = w.id_;
  return push(xv * wv.transpose(), needs(x) || needs(w), [xi, wi](Graph& g, const Matrix& go) {
    if (g.nodes_[static_cast<size_t>(xi)].needs_grad) g.accumulate(xi, go * g.value(wi));
    if (g.nodes_[static_cast<size_t>(wi)].needs_grad) {
      g.accumulate(wi, go.transpose() * g.value(xi));
    }
  });
}

Var Graph::add_row(Var x, Var b) {
  check_owner(x);
  check_owner(b);
  const Matrix& xv = x.value();
  const Matrix& bv = b.value();
  require(bv.rows() == 1 && bv.cols() == xv.cols(),
          "add_row: " + dims(xv) + " plus row " + dims(bv));
  const int xi = x.id_, bi = b.id_;
  Matrix out = xv.rowwise() + bv.row(0);
  return push(std::move(out), needs(x) || needs(b), [xi, bi](Graph& g, const Matrix& go) {
    g.accumulate(xi, go);
    if (g.nodes_[static_cast<size_t>(bi)].needs_grad) g.accumulate(bi, go.colwise().sum());
  });
}

Var Graph::add(Var a, Var b) {
  check_owner(a);
  check_owner(b);
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "add: " + dims(a.value()) + " vs " + dims(b.value()));
  const int ai = a.id_, bi = b.id_;
  return push(a.value() + b.value(), needs(a) || needs(b), [ai, bi](Graph& g, const Matrix& go) {
    g.accumulate(ai, go);
    g.accumulate(bi, go);
  });
}

Var Graph::sub(Var a, Var b) {
  check_owner(a);
  check_owner(b);
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "sub: " + dims(a.value()) + " vs " + dims(b.value()));
  const int ai = a.id_, bi = b.id_;
  return push(a.value() - b.value(), needs(a) || needs(b), [ai, bi](Graph& g, const Matrix& go) {
    g.accumulate(ai, go);
    g.accumulate(bi, -go);
  });
}

Var Graph::mul(Var a, Var b) {
  check_owner(a);
  check_owner(b);
  require(a.rows() == b.rows() && a.cols() == b.cols(),
          "mul: " + dims(a.value()) + " vs " + dims(b.value()));
  const int ai = a.id_, bi = b.id_;
  Matrix out = a.value().cwiseProduct(b.value());
  return push(std::move(out), needs(a) || needs(b), [ai, bi](Graph& g, const Matrix& go) {
    if (g.nodes_[static_cast<size_t>(ai)].needs_grad) g.accumulate(ai, go.cwiseProduct(g.value(bi)));
    if (g.nodes_[static_cast<size_t>(bi)].needs_grad) g.accumulate(bi, go.cwiseProduct(g.value(ai)));
  });
}

Var Graph::affine(Var x, double scale, double shift) {
  check_owner(x);
  const int xi = x.id_;
  Matrix out = (x.value().array() * scale + shift).matrix();
  return push(std::move(out), needs(x),
              [xi, scale](Graph& g, const Matrix& go) { g.accumulate(xi, go * scale); });
}

Var Graph::relu(Var x) {
  check_owner(x);
  const int xi = x.id_;
  Matrix out = x.value().cwiseMax(0.0);
  return push(std::move(out), needs(x), [xi](Graph& g, const Matrix& go) {
    // subgradient at 0 is 0
    g.accumulate(xi, (g.value(xi).array() > 0.0).select(go.array(), 0.0).matrix());
  });
}

Var Graph::elu(Var x) {
  check_owner(x);
  const int xi = x.id_;
  Matrix out = x.value().unaryExpr([](double v) { return v > 0.0 ? v : std::expm1(v); });
  return push(std::move(out), needs(x), [xi](Graph& g, const Matrix& go) {
    const Matrix& xv = g.value(xi);
    Matrix d = xv.unaryExpr([](double v) { return v > 0.0 ? 1.0 : std::exp(v); });
    g.accumulate(xi, go.cwiseProduct(d));
  });
}

Var Graph::sigmoid(Var x) {
  check_owner(x);
  const int xi = x.id_;
  const int self = static_cast<int>(nodes_.size());
  Matrix out = x.value().unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
  return push(std::move(out), needs(x), [xi, self](Graph& g, const Matrix& go) {
    const auto s = g.value(self).array();
    g.accumulate(xi, (go.array() * s * (1.0 - s)).matrix());
  });
}

Var Graph::tanh(Var x) {
  check_owner(x);
  const int xi = x.id_;
  const int self = static_cast<int>(nodes_.size());
  Matrix out = x.value().array().tanh().matrix();
  return push(std::move(out), needs(x), [xi, self](Graph& g, const Matrix& go) {
    const auto t = g.value(self).array();
    g.accumulate(xi, (go.array() * (1.0 - t.square())).matrix());
  });
}

Var Graph::abs(Var x) {
  check_owner(x);
  const int xi = x.id_;
  Matrix out = x.value().cwiseAbs();
  return push(std::move(out), needs(x), [xi](Graph& g, const Matrix& go) {
    Matrix sign = g.value(xi).unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
    g.accumulate(xi, go.cwiseProduct(sign));
  });
}

Var Graph::clamp_max(Var x, double hi) {
  check_owner(x);
  const int xi = x.id_;
  Matrix out = x.value().cwiseMin(hi);
  return push(std::move(out), needs(x), [xi, hi](Graph& g, const Matrix& go) {
    g.accumulate(xi, (g.value(xi).array() < hi).select(go.array(), 0.0).matrix());
  });
}

Var Graph::concat_cols(std::span<const Var> parts) {
  require(!parts.empty(), "concat_cols: no inputs");
  const Eigen::Index rows = parts.front().rows();
  Eigen::Index cols = 0;
  bool any = false;
  std::vector<int> ids;
  std::vector<Eigen::Index> widths;
  for (const Var& p : parts) {
    check_owner(p);
    require(p.rows() == rows, "concat_cols: row mismatch");
    ids.push_back(p.id_);
    widths.push_back(p.cols());
    cols += p.cols();
    any = any || needs(p);
  }
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Var& p : parts) {
    out.middleCols(at, p.cols()) = p.value();
    at += p.cols();
  }
  return push(std::move(out), any, [ids, widths](Graph& g, const Matrix& go) {
    Eigen::Index off = 0;
    for (size_t k = 0; k < ids.size(); ++k) {
      g.accumulate(ids[k], go.middleCols(off, widths[k]));
      off += widths[k];
    }
  });
}

Var Graph::slice_cols(Var x, Eigen::Index start, Eigen::Index count) {
  check_owner(x);
  require(start >= 0 && count >= 0 && start + count <= x.cols(), "slice_cols: out of range");
  const int xi = x.id_;
  const Eigen::Index rows = x.rows(), cols = x.cols();
  Matrix out = x.value().middleCols(start, count);
  return push(std::move(out), needs(x), [xi, rows, cols, start, count](Graph& g, const Matrix& go) {
    Matrix full = Matrix::Zero(rows, cols);
    full.middleCols(start, count) = go;
    g.accumulate(xi, full);
  });
}

Var Graph::reshape(Var x, Eigen::Index rows, Eigen::Index cols) {
  check_owner(x);
  require(rows * cols == x.value().size(), "reshape: size mismatch");
  const int xi = x.id_;
  const Eigen::Index in_rows = x.rows(), in_cols = x.cols();
  Matrix out = Eigen::Map<const Matrix>(x.value().data(), rows, cols);
  return push(std::move(out), needs(x), [xi, in_rows, in_cols](Graph& g, const Matrix& go) {
    g.accumulate(xi, Eigen::Map<const Matrix>(go.data(), in_rows, in_cols));
  });
}

Var Graph::sum_cols(Var x) {
  check_owner(x);
  const int xi = x.id_;
  const Eigen::Index cols = x.cols();
  Matrix out = x.value().rowwise().sum();
  return push(std::move(out), needs(x), [xi, cols](Graph& g, const Matrix& go) {
    g.accumulate(xi, go.replicate(1, cols));
  });
}

Var Graph::sum_all(Var x) {
  check_owner(x);
  const int xi = x.id_;
  const Eigen::Index rows = x.rows(), cols = x.cols();
  Matrix out(1, 1);
  out(0, 0) = x.value().sum();
  return push(std::move(out), needs(x), [xi, rows, cols](Graph& g, const Matrix& go) {
    g.accumulate(xi, Matrix::Constant(rows, cols, go(0, 0)));
  });
}

Var Graph::gather_cols(Var x, std::span<const int> index) {
  check_owner(x);
  require(static_cast<Eigen::Index>(index.size()) == x.rows(), "gather_cols: index length");
  const Matrix& xv = x.value();
  Matrix out(xv.rows(), 1);
  for (Eigen::Index r = 0; r < xv.rows(); ++r) {
    const int c = index[static_cast<size_t>(r)];
    require(c >= 0 && c < xv.cols(), "gather_cols: column index out of range");
    out(r, 0) = xv(r, c);
  }
  const int xi = x.id_;
  const Eigen::Index rows = xv.rows(), cols = xv.cols();
  std::vector<int> idx(index.begin(), index.end());
  return push(std::move(out), needs(x), [xi, rows, cols, idx](Graph& g, const Matrix& go) {
    Matrix full = Matrix::Zero(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) full(r, idx[static_cast<size_t>(r)]) = go(r, 0);
    g.accumulate(xi, full);
  });
}

Var Graph::group_sum_rows(Var x, Eigen::Index group) {
  check_owner(x);
  require(group > 0 && x.rows() % group == 0, "group_sum_rows: rows not divisible by group");
  const Matrix& xv = x.value();
  const Eigen::Index out_rows = xv.rows() / group;
  Matrix out = Matrix::Zero(out_rows, xv.cols());
  for (Eigen::Index r = 0; r < xv.rows(); ++r) out.row(r / group) += xv.row(r);
  const int xi = x.id_;
  const Eigen::Index rows = xv.rows();
  return push(std::move(out), needs(x), [xi, rows, group](Graph& g, const Matrix& go) {
    Matrix full(rows, go.cols());
    for (Eigen::Index r = 0; r < rows; ++r) full.row(r) = go.row(r / group);
    g.accumulate(xi, full);
  });
}

Var Graph::scale_rows(Var x, const Vector& weights) {
  check_owner(x);
  require(weights.size() == x.rows(), "scale_rows: weight length");
  const int xi = x.id_;
  Matrix out = weights.asDiagonal() * x.value();
  return push(std::move(out), needs(x), [xi, weights](Graph& g, const Matrix& go) {
    g.accumulate(xi, weights.asDiagonal() * go);
  });
}

Var Graph::masked_max(std::span<const Var> xs, std::span<const Vector> masks) {
  require(!xs.empty() && xs.size() == masks.size(), "masked_max: inputs and masks differ");
  const Eigen::Index rows = xs.front().rows(), cols = xs.front().cols();
  bool any = false;
  for (size_t k = 0; k < xs.size(); ++k) {
    check_owner(xs[k]);
    require(xs[k].rows() == rows && xs[k].cols() == cols, "masked_max: shape mismatch");
    require(masks[k].size() == rows, "masked_max: mask length");
    any = any || needs(xs[k]);
  }
  Matrix out(rows, cols);
  // source[k] = which input supplied the max at (r, c)
  std::vector<int> source(static_cast<size_t>(rows * cols), -1);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) {
      int best = -1;
      double best_v = 0.0;
      for (size_t k = 0; k < xs.size(); ++k) {
        if (masks[k](r) <= 0.0) continue;
        const double v = xs[k].value()(r, c);
        if (best < 0 || v > best_v) {
          best = static_cast<int>(k);
          best_v = v;
        }
      }
      require(best >= 0, "masked_max: row with no valid entry");
      out(r, c) = best_v;
      source[static_cast<size_t>(r * cols + c)] = best;
    }
  }
  std::vector<int> ids;
  for (const Var& v : xs) ids.push_back(v.id_);
  return push(std::move(out), any, [ids, source, rows, cols](Graph& g, const Matrix& go) {
    for (size_t k = 0; k < ids.size(); ++k) {
      if (!g.nodes_[static_cast<size_t>(ids[k])].needs_grad) continue;
      Matrix part = Matrix::Zero(rows, cols);
      bool touched = false;
      for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
          if (source[static_cast<size_t>(r * cols + c)] == static_cast<int>(k)) {
            part(r, c) = go(r, c);
            touched = true;
          }
        }
      }
      if (touched) g.accumulate(ids[k], part);
    }
  });
}

Var Graph::rowwise_matmul(Var x, Var w, Eigen::Index n, Eigen::Index m) {
  check_owner(x);
  check_owner(w);
  require(x.cols() == n && w.cols() == n * m && x.rows() == w.rows(),
          "rowwise_matmul: " + dims(x.value()) + " with " + dims(w.value()));
  const Eigen::Index rows = x.rows();
  Matrix out(rows, m);
  for (Eigen::Index r = 0; r < rows; ++r) {
    Eigen::Map<const Matrix> wr(w.value().row(r).data(), n, m);
    out.row(r) = x.value().row(r) * wr;
  }
  const int xi = x.id_, wi = w.id_;
  return push(std::move(out), needs(x) || needs(w), [xi, wi, rows, n, m](Graph& g, const Matrix& go) {
    const bool gx = g.nodes_[static_cast<size_t>(xi)].needs_grad;
    const bool gw = g.nodes_[static_cast<size_t>(wi)].needs_grad;
    Matrix dx = gx ? Matrix(rows, n) : Matrix();
    Matrix dw = gw ? Matrix(rows, n * m) : Matrix();
    for (Eigen::Index r = 0; r < rows; ++r) {
      Eigen::Map<const Matrix> wr(g.value(wi).row(r).data(), n, m);
      if (gx) dx.row(r) = go.row(r) * wr.transpose();
      if (gw) {
        Matrix outer = g.value(xi).row(r).transpose() * go.row(r);
        dw.row(r) = Eigen::Map<const Eigen::RowVectorXd>(outer.data(), n * m);
      }
    }
    if (gx) g.accumulate(xi, dx);
    if (gw) g.accumulate(wi, dw);
  });
}

Var Graph::masked_sq_error(Var pred, const Vector& target, const Vector& mask) {
  check_owner(pred);
  require(pred.cols() == 1 && pred.rows() == target.size() && mask.size() == target.size(),
          "masked_sq_error: expects B x 1 prediction with matching target and mask");
  const Vector diff = pred.value().col(0) - target;
  Matrix out(1, 1);
  out(0, 0) = (mask.array() * diff.array().square()).sum();
  const int pi = pred.id_;
  return push(std::move(out), needs(pred), [pi, diff, mask](Graph& g, const Matrix& go) {
    Matrix d = (2.0 * go(0, 0)) * (mask.array() * diff.array()).matrix();
    g.accumulate(pi, d);
  });
}

Var Graph::mse(Var pred, const Matrix& target) {
  check_owner(pred);
  require(pred.rows() == target.rows() && pred.cols() == target.cols(), "mse: shape mismatch");
  require(target.size() > 0, "mse: empty input");
  const Matrix diff = pred.value() - target;
  const double n = static_cast<double>(diff.size());
  Matrix out(1, 1);
  out(0, 0) = diff.squaredNorm() / n;
  const int pi = pred.id_;
  return push(std::move(out), needs(pred), [pi, diff, n](Graph& g, const Matrix& go) {
    g.accumulate(pi, diff * (2.0 * go(0, 0) / n));
  });
}

void Graph::backward(Var loss) {
  check_owner(loss);
  if (consumed_) throw std::logic_error("Graph: backward called twice on the same forward pass");
  if (loss.value().size() != 1) throw ShapeError("backward: loss must be a 1x1 node");
  consumed_ = true;
  Node& root = nodes_[static_cast<size_t>(loss.id_)];
  if (!root.needs_grad) return;
  root.grad = Matrix::Ones(1, 1);
  for (int i = loss.id_; i >= 0; --i) {
    Node& n = nodes_[static_cast<size_t>(i)];
    if (!n.needs_grad || n.grad.size() == 0) continue;
    if (n.param != nullptr) {
      n.param->grad() += n.grad;
    } else if (n.backward) {
      n.backward(*this, n.grad);
    }
    // free intermediate gradients as we go
    Matrix().swap(n.grad);
  }
}

Var operator+(Var a, Var b) { return a.graph()->add(a, b); }
Var operator-(Var a, Var b) { return a.graph()->sub(a, b); }
Var operator*(Var a, Var b) { return a.graph()->mul(a, b); }

}  // namespace rqn::nn

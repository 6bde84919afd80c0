#include "rqn/training/learner.h"

#include <cmath>
#include <stdexcept>

#include "rqn/agents/policy.h"
#include "rqn/mixers/vdn.h"
#include "rqn/nn/graph.h"

namespace rqn::training {

using nn::Graph;
using nn::Var;

Algorithm parse_algorithm(const std::string& name) {
  if (name == "vdn") return Algorithm::kVdn;
  if (name == "qmix") return Algorithm::kQmix;
  if (name == "qtran") return Algorithm::kQtran;
  if (name == "rqn") return Algorithm::kRqn;
  throw std::invalid_argument("unknown algorithm '" + name + "' (expected vdn, qmix, qtran or rqn)");
}

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kVdn: return "vdn";
    case Algorithm::kQmix: return "qmix";
    case Algorithm::kQtran: return "qtran";
    case Algorithm::kRqn: return "rqn";
  }
  return "unknown";
}

namespace {

// Per-row argmax (lowest index on ties).
std::vector<int> row_argmax(const Matrix& q) {
  std::vector<int> a(static_cast<size_t>(q.rows()));
  for (Eigen::Index r = 0; r < q.rows(); ++r) {
    a[static_cast<size_t>(r)] = agents::greedy_action({q.row(r).data(), static_cast<size_t>(q.cols())});
  }
  return a;
}

// B x A counts of the actions in each group of N rows.
Matrix action_counts(const std::vector<int>& actions, int batch, int agents, int num_actions) {
  Matrix m = Matrix::Zero(batch, num_actions);
  for (int b = 0; b < batch; ++b) {
    for (int i = 0; i < agents; ++i) m(b, actions[static_cast<size_t>(b * agents + i)]) += 1.0;
  }
  return m;
}

Matrix group_sum(const Matrix& x, int group) {
  Matrix out = Matrix::Zero(x.rows() / group, x.cols());
  for (Eigen::Index r = 0; r < x.rows(); ++r) out.row(r / group) += x.row(r);
  return out;
}

}  // namespace

Learner::Learner(LearnerConfig config, const envs::DecPomdpSpec& spec, std::uint64_t init_seed)
    : config_(config), spec_(spec) {
  spec_.validate();
  nn::Rng rng(init_seed);
  agent_ = agents::AgentNetwork(spec.obs_dim, spec.num_actions, spec.num_agents, rng);
  switch (config_.algorithm) {
    case Algorithm::kRqn: rqn_.emplace(spec.num_agents, rng); break;
    case Algorithm::kQmix: qmix_.emplace(spec.num_agents, spec.state_dim, rng); break;
    case Algorithm::kQtran: qtran_.emplace(agent_.hidden_dim(), spec.num_actions, rng); break;
    case Algorithm::kVdn: break;
  }
  targets_.agent = agent_;
  if (qmix_) targets_.qmix = *qmix_;
  if (qtran_) targets_.qtran = *qtran_;
  optimizer_ = std::make_unique<nn::Optimizer>(parameters(), config_.optimizer);
}

std::vector<nn::Parameter*> Learner::parameters() {
  std::vector<nn::Parameter*> ps = agent_.parameters();
  auto append = [&ps](std::vector<nn::Parameter*> more) { ps.insert(ps.end(), more.begin(), more.end()); };
  if (rqn_) append(rqn_->parameters());
  if (qmix_) append(qmix_->parameters());
  if (qtran_) append(qtran_->parameters());
  return ps;
}

void Learner::sync_targets() {
  targets_.agent = agent_;
  if (qmix_) targets_.qmix = *qmix_;
  if (qtran_) targets_.qtran = *qtran_;
  ++syncs_;
}

std::vector<Vector> Learner::td_targets(const TrainBatch& batch) const {
  const int steps = batch.max_length;
  const int b = batch.batch_size;
  const int n = batch.num_agents;

  std::vector<Matrix> q(static_cast<size_t>(steps) + 1);
  std::vector<Matrix> hidden(static_cast<size_t>(steps) + 1);
  Matrix h = targets_.agent.initial_hidden(static_cast<Eigen::Index>(b) * n);
  for (int t = 0; t <= steps; ++t) {
    auto out = targets_.agent.forward(batch.agent_inputs[static_cast<size_t>(t)], h);
    h = out.hidden;
    q[static_cast<size_t>(t)] = std::move(out.q);
    hidden[static_cast<size_t>(t)] = h;
  }

  std::vector<Vector> y;
  y.reserve(static_cast<size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    const Matrix& qn = q[static_cast<size_t>(t) + 1];
    Vector next(b);
    switch (config_.algorithm) {
      case Algorithm::kVdn:
      case Algorithm::kRqn: {
        const Vector best = qn.rowwise().maxCoeff();
        for (int e = 0; e < b; ++e) next(e) = best.segment(static_cast<Eigen::Index>(e) * n, n).sum();
        break;
      }
      case Algorithm::kQmix: {
        const Vector best = qn.rowwise().maxCoeff();
        const Matrix per_agent = Eigen::Map<const Matrix>(best.data(), b, n);
        next = targets_.qmix->mix(per_agent, batch.states[static_cast<size_t>(t) + 1]).col(0);
        break;
      }
      case Algorithm::kQtran: {
        const std::vector<int> greedy = row_argmax(qn);
        const Matrix counts = action_counts(greedy, b, n, batch.num_actions);
        next = targets_.qtran->joint_q(group_sum(hidden[static_cast<size_t>(t) + 1], n), counts).col(0);
        break;
      }
    }
    const Vector& term = batch.terminated[static_cast<size_t>(t)];
    y.push_back(batch.rewards[static_cast<size_t>(t)] +
                (config_.gamma * (1.0 - term.array()) * next.array()).matrix());
  }
  return y;
}

TrainStats Learner::compute_loss(const TrainBatch& batch, bool accumulate_grad) {
  const int steps = batch.max_length;
  const int b = batch.batch_size;
  const int n = batch.num_agents;
  const double count = batch.valid_steps();
  if (count <= 0.0) throw std::logic_error("train batch has no valid steps");

  const std::uint64_t calls_before = rqn_ ? rqn_->forward_calls() : 0;
  const std::vector<Vector> y = td_targets(batch);
  if (rqn_) target_estimator_calls_ += rqn_->forward_calls() - calls_before;

  Graph g;
  Var h = g.constant(agent_.initial_hidden(static_cast<Eigen::Index>(b) * n));
  std::vector<Var> q(static_cast<size_t>(steps)), hidden(static_cast<size_t>(steps)),
      chosen(static_cast<size_t>(steps));
  for (int t = 0; t < steps; ++t) {
    const size_t k = static_cast<size_t>(t);
    auto [qt, ht] = agent_.forward(g, g.constant(batch.agent_inputs[k]), h);
    h = ht;
    q[k] = qt;
    hidden[k] = ht;
    chosen[k] = g.reshape(g.gather_cols(qt, batch.actions[k]), b, n);
  }

  TrainStats stats;
  Var loss;
  auto accumulate_sq = [&](Var pred, size_t k) {
    Var term = g.masked_sq_error(pred, y[k], batch.mask[k]);
    loss = loss.valid() ? g.add(loss, term) : term;
  };

  switch (config_.algorithm) {
    case Algorithm::kVdn: {
      for (size_t k = 0; k < chosen.size(); ++k) accumulate_sq(mixers::vdn_mix(g, chosen[k]), k);
      loss = g.affine(loss, 1.0 / count, 0.0);
      break;
    }
    case Algorithm::kRqn: {
      Var features = mixers::rqn_features(g, chosen, batch.mask, config_.rqn_detach_features);
      Var phi_sum = g.sum_cols(rqn_->factors(g, features));
      for (size_t k = 0; k < chosen.size(); ++k) accumulate_sq(g.add(g.sum_cols(chosen[k]), phi_sum), k);
      loss = g.affine(loss, 1.0 / count, 0.0);
      break;
    }
    case Algorithm::kQmix: {
      for (size_t k = 0; k < chosen.size(); ++k) {
        accumulate_sq(qmix_->mix(g, chosen[k], g.constant(batch.states[k])), k);
      }
      loss = g.affine(loss, 1.0 / count, 0.0);
      break;
    }
    case Algorithm::kQtran: {
      std::vector<mixers::QtranLossInputs> inputs;
      inputs.reserve(chosen.size());
      for (size_t k = 0; k < chosen.size(); ++k) {
        Var hidden_sum = g.group_sum_rows(hidden[k], n);
        Var taken = g.constant(action_counts(batch.actions[k], b, n, batch.num_actions));
        const std::vector<int> greedy = row_argmax(q[k].value());
        const Matrix greedy_counts = action_counts(greedy, b, n, batch.num_actions);
        mixers::QtranLossInputs in;
        in.joint_taken = qtran_->joint_q(g, hidden_sum, taken);
        in.sum_q_taken = g.sum_cols(chosen[k]);
        in.sum_q_greedy = g.sum_cols(g.reshape(g.gather_cols(q[k], greedy), b, n));
        in.state_value = qtran_->state_value(g, hidden_sum);
        in.joint_greedy = qtran_->joint_q(hidden_sum.value(), greedy_counts).col(0);
        in.td_target = y[k];
        in.mask = batch.mask[k];
        inputs.push_back(std::move(in));
      }
      const mixers::QtranLossVars parts = mixers::qtran_losses(g, inputs, config_.qtran_weights);
      stats.td_loss = parts.td.item();
      stats.opt_loss = parts.opt.item();
      stats.nopt_loss = parts.nopt.item();
      loss = parts.total;
      break;
    }
  }

  stats.loss = loss.item();
  if (!std::isfinite(stats.loss)) throw nn::DivergenceError("training loss is not finite");
  if (accumulate_grad) g.backward(loss);
  return stats;
}

TrainStats Learner::train_step(const TrainBatch& batch) {
  optimizer_->zero_grad();
  TrainStats stats = compute_loss(batch, true);
  stats.grad_norm = optimizer_->step();
  return stats;
}

}  // namespace rqn::training

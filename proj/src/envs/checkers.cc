#include "rqn/envs/checkers.h"

#include <algorithm>

namespace rqn::envs {

namespace {
constexpr int kChannels = 4;  // wall, apple, lemon, other agent
}

Checkers::Checkers(CheckersConfig config)
    : Environment(DecPomdpSpec{.num_agents = 2,
                               .num_actions = kNumMoveActions,
                               .obs_dim = 2 + 9 * kChannels,
                               .state_dim = 4 + 2 * kRows * kCols,
                               .episode_limit = config.episode_limit,
                               .gamma = 0.99}),
      config_(config),
      board_(static_cast<size_t>(kRows * kCols), kNone) {}

bool Checkers::inside(Cell c) { return c.row >= 0 && c.row < kRows && c.col >= 0 && c.col < kCols; }

Checkers::Fruit Checkers::fruit_at(Cell c) const {
  if (!inside(c)) return kNone;
  return board_[static_cast<size_t>(c.row * kCols + c.col)];
}

int Checkers::apples_left() const { return static_cast<int>(std::count(board_.begin(), board_.end(), kApple)); }

void Checkers::set_positions(Cell a0, Cell a1) {
  if (!inside(a0) || !inside(a1) || a0 == a1) throw EnvError("checkers: invalid placement");
  pos_ = {a0, a1};
}

void Checkers::set_fruit(Cell c, Fruit f) {
  if (!inside(c)) throw EnvError("checkers: fruit outside the board");
  board_[static_cast<size_t>(c.row * kCols + c.col)] = f;
}

void Checkers::do_reset(std::uint64_t /*seed*/) {
  for (int r = 0; r < kRows; ++r) {
    for (int c = 0; c < kCols; ++c) {
      Fruit f = kNone;
      if (c >= 1) f = (r + c) % 2 == 0 ? kApple : kLemon;
      board_[static_cast<size_t>(r * kCols + c)] = f;
    }
  }
  pos_ = {Cell{0, 0}, Cell{kRows - 1, 0}};
}

bool Checkers::do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) {
  for (size_t k = 0; k < 2; ++k) {
    agent_rewards[k] += config_.step_penalty;
    const Cell target = moved(pos_[k], joint_action[k]);
    if (!inside(target) || target == pos_[1 - k]) continue;
    pos_[k] = target;
    Fruit& f = board_[static_cast<size_t>(target.row * kCols + target.col)];
    if (f == kApple) agent_rewards[k] += config_.apple_reward;
    if (f == kLemon) agent_rewards[k] += config_.lemon_reward;
    f = kNone;
  }
  return apples_left() == 0;
}

std::vector<double> Checkers::observation(int agent) const {
  const Cell self = pos_[static_cast<size_t>(agent)];
  const Cell other = pos_[static_cast<size_t>(1 - agent)];
  std::vector<double> obs(static_cast<size_t>(spec().obs_dim), 0.0);
  obs[0] = normalized(self.row, kRows);
  obs[1] = normalized(self.col, kCols);
  size_t at = 2;
  for (int dr = -1; dr <= 1; ++dr) {
    for (int dc = -1; dc <= 1; ++dc, at += kChannels) {
      const Cell c{self.row + dr, self.col + dc};
      if (!inside(c)) {
        obs[at] = 1.0;
        continue;
      }
      const Fruit f = fruit_at(c);
      if (f == kApple) obs[at + 1] = 1.0;
      if (f == kLemon) obs[at + 2] = 1.0;
      if (c == other) obs[at + 3] = 1.0;
    }
  }
  return obs;
}

std::vector<double> Checkers::state() const {
  std::vector<double> s;
  s.reserve(static_cast<size_t>(spec().state_dim));
  for (const Cell& p : pos_) {
    s.push_back(normalized(p.row, kRows));
    s.push_back(normalized(p.col, kCols));
  }
  for (Fruit f : board_) {
    s.push_back(f == kApple ? 1.0 : 0.0);
    s.push_back(f == kLemon ? 1.0 : 0.0);
  }
  return s;
}

}  // namespace rqn::envs

#include "rqn/envs/predator_prey.h"

#include <algorithm>
#include <limits>

namespace rqn::envs {

namespace {

constexpr int kChannels = 3;  // out-of-bounds, other predator, prey

DecPomdpSpec make_spec(const PredatorPreyConfig& c) {
  if (c.grid_size < 3) throw EnvError("predator_prey: grid too small");
  if (c.num_predators < 2) throw EnvError("predator_prey: need at least two predators");
  if (c.num_prey < 1) throw EnvError("predator_prey: need at least one prey");
  if (c.view < 1 || c.view % 2 == 0) throw EnvError("predator_prey: view must be odd");
  if (c.num_predators + c.num_prey > c.grid_size * c.grid_size) {
    throw EnvError("predator_prey: too many entities for the grid");
  }
  return DecPomdpSpec{.num_agents = c.num_predators,
                      .num_actions = kNumMoveActions + 1,
                      .obs_dim = 2 + c.view * c.view * kChannels,
                      .state_dim = 2 * c.num_predators + 3 * c.num_prey,
                      .episode_limit = c.episode_limit,
                      .gamma = 0.99};
}

}  // namespace

PredatorPrey::PredatorPrey(PredatorPreyConfig config) : Environment(make_spec(config)), config_(config) {}

int PredatorPrey::prey_remaining() const {
  return static_cast<int>(std::count(alive_.begin(), alive_.end(), true));
}

bool PredatorPrey::inside(Cell c) const {
  return c.row >= 0 && c.row < config_.grid_size && c.col >= 0 && c.col < config_.grid_size;
}

bool PredatorPrey::occupied(Cell c) const {
  for (const Cell& p : predators_) {
    if (p == c) return true;
  }
  for (size_t k = 0; k < prey_.size(); ++k) {
    if (alive_[k] && prey_[k] == c) return true;
  }
  return false;
}

void PredatorPrey::do_reset(std::uint64_t seed) {
  rng_.seed(seed);
  const int g = config_.grid_size;
  std::vector<int> cells(static_cast<size_t>(g * g));
  for (int i = 0; i < g * g; ++i) cells[static_cast<size_t>(i)] = i;
  // partial Fisher-Yates for distinct placements
  const int needed = config_.num_predators + config_.num_prey;
  for (int i = 0; i < needed; ++i) {
    std::uniform_int_distribution<int> pick(i, g * g - 1);
    std::swap(cells[static_cast<size_t>(i)], cells[static_cast<size_t>(pick(rng_))]);
  }
  predators_.clear();
  prey_.clear();
  for (int i = 0; i < needed; ++i) {
    const Cell c{cells[static_cast<size_t>(i)] / g, cells[static_cast<size_t>(i)] % g};
    if (i < config_.num_predators) {
      predators_.push_back(c);
    } else {
      prey_.push_back(c);
    }
  }
  alive_.assign(prey_.size(), true);
}

void PredatorPrey::set_positions(std::vector<Cell> predators, std::vector<Cell> prey) {
  if (static_cast<int>(predators.size()) != config_.num_predators ||
      static_cast<int>(prey.size()) != config_.num_prey) {
    throw EnvError("predator_prey: set_positions with wrong entity counts");
  }
  predators_ = std::move(predators);
  prey_ = std::move(prey);
  alive_.assign(prey_.size(), true);
}

bool PredatorPrey::do_step(std::span<const int> joint_action, std::vector<double>& agent_rewards) {
  const int n = config_.num_predators;
  double shared = config_.step_penalty;

  // Capture attempts resolve on the current positions.
  std::vector<bool> used(static_cast<size_t>(n), false);
  for (size_t k = 0; k < prey_.size(); ++k) {
    if (!alive_[k]) continue;
    std::vector<int> captors;
    for (int i = 0; i < n; ++i) {
      if (joint_action[static_cast<size_t>(i)] == kCapture && !used[static_cast<size_t>(i)] &&
          adjacent(predators_[static_cast<size_t>(i)], prey_[k])) {
        captors.push_back(i);
      }
    }
    if (captors.size() >= 2) {
      alive_[k] = false;
      for (int i : captors) used[static_cast<size_t>(i)] = true;
      shared += config_.capture_reward;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (joint_action[static_cast<size_t>(i)] == kCapture && !used[static_cast<size_t>(i)]) {
      shared += config_.capture_penalty;
    }
  }

  // Movement, in agent order; blocked moves leave the predator in place.
  for (int i = 0; i < n; ++i) {
    const int a = joint_action[static_cast<size_t>(i)];
    if (a == kCapture || a == kStay) continue;
    const Cell target = moved(predators_[static_cast<size_t>(i)], a);
    if (inside(target) && !occupied(target)) predators_[static_cast<size_t>(i)] = target;
  }

  // Prey wander uniformly over the four moves and staying put.
  std::uniform_int_distribution<int> wander(0, kNumMoveActions - 1);
  for (size_t k = 0; k < prey_.size(); ++k) {
    if (!alive_[k]) continue;
    const Cell target = moved(prey_[k], wander(rng_));
    if (inside(target) && !occupied(target)) prey_[k] = target;
  }

  std::fill(agent_rewards.begin(), agent_rewards.end(), shared);
  return prey_remaining() == 0;
}

std::vector<double> PredatorPrey::observation(int agent) const {
  const Cell self = predators_[static_cast<size_t>(agent)];
  const int g = config_.grid_size;
  const int half = config_.view / 2;
  std::vector<double> obs(static_cast<size_t>(spec().obs_dim), 0.0);
  obs[0] = normalized(self.row, g);
  obs[1] = normalized(self.col, g);
  size_t at = 2;
  for (int dr = -half; dr <= half; ++dr) {
    for (int dc = -half; dc <= half; ++dc, at += kChannels) {
      const Cell c{self.row + dr, self.col + dc};
      if (!inside(c)) {
        obs[at] = 1.0;
        continue;
      }
      for (int j = 0; j < config_.num_predators; ++j) {
        if (j != agent && predators_[static_cast<size_t>(j)] == c) obs[at + 1] = 1.0;
      }
      for (size_t k = 0; k < prey_.size(); ++k) {
        if (alive_[k] && prey_[k] == c) obs[at + 2] = 1.0;
      }
    }
  }
  return obs;
}

std::vector<double> PredatorPrey::state() const {
  const int g = config_.grid_size;
  std::vector<double> s;
  s.reserve(static_cast<size_t>(spec().state_dim));
  for (const Cell& p : predators_) {
    s.push_back(normalized(p.row, g));
    s.push_back(normalized(p.col, g));
  }
  for (size_t k = 0; k < prey_.size(); ++k) {
    s.push_back(alive_[k] ? normalized(prey_[k].row, g) : 0.0);
    s.push_back(alive_[k] ? normalized(prey_[k].col, g) : 0.0);
    s.push_back(alive_[k] ? 1.0 : 0.0);
  }
  return s;
}

double PredatorPrey::optimal_return() const {
  if (prey_remaining() != 1) throw EnvError("predator_prey: optimal_return needs exactly one live prey");
  const int g = config_.grid_size;
  Cell target{};
  for (size_t k = 0; k < prey_.size(); ++k) {
    if (alive_[k]) target = prey_[k];
  }
  std::vector<bool> blocked(static_cast<size_t>(g * g), false);
  blocked[static_cast<size_t>(target.row * g + target.col)] = true;

  std::vector<Cell> flanks;
  for (int a = kUp; a <= kRight; ++a) {
    const Cell c = moved(target, a);
    if (inside(c)) flanks.push_back(c);
  }
  std::vector<std::vector<int>> dist;
  for (const Cell& p : predators_) dist.push_back(bfs_distances(g, g, blocked, p));

  // Two distinct flank cells, any two predators; the rest idle.
  int best = std::numeric_limits<int>::max();
  const size_t n = predators_.size();
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (size_t a = 0; a < flanks.size(); ++a) {
        for (size_t b = 0; b < flanks.size(); ++b) {
          if (a == b) continue;
          const int da = dist[i][static_cast<size_t>(flanks[a].row * g + flanks[a].col)];
          const int db = dist[j][static_cast<size_t>(flanks[b].row * g + flanks[b].col)];
          if (da < 0 || db < 0) continue;
          best = std::min(best, std::max(da, db));
        }
      }
    }
  }
  const int steps = best + 1;
  const double agents = static_cast<double>(n);
  return config_.capture_reward * agents + config_.step_penalty * agents * steps;
}

}  // namespace rqn::envs

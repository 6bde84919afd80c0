#include "rqn/envs/grid.h"

#include <cstdlib>
#include <deque>

namespace rqn::envs {

Cell moved(Cell c, int action) {
  switch (action) {
    case kUp: return {c.row - 1, c.col};
    case kDown: return {c.row + 1, c.col};
    case kLeft: return {c.row, c.col - 1};
    case kRight: return {c.row, c.col + 1};
    default: return c;
  }
}

bool adjacent(Cell a, Cell b) { return manhattan(a, b) == 1; }

int manhattan(Cell a, Cell b) { return std::abs(a.row - b.row) + std::abs(a.col - b.col); }

double normalized(int v, int extent) {
  return extent <= 1 ? 0.0 : static_cast<double>(v) / static_cast<double>(extent - 1);
}

std::vector<int> bfs_distances(int rows, int cols, const std::vector<bool>& blocked, Cell from) {
  std::vector<int> dist(static_cast<size_t>(rows * cols), -1);
  std::deque<Cell> frontier;
  dist[static_cast<size_t>(from.row * cols + from.col)] = 0;
  frontier.push_back(from);
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    for (int a = kUp; a <= kRight; ++a) {
      const Cell n = moved(c, a);
      if (n.row < 0 || n.row >= rows || n.col < 0 || n.col >= cols) continue;
      const size_t k = static_cast<size_t>(n.row * cols + n.col);
      if (blocked[k] || dist[k] >= 0) continue;
      dist[k] = dist[static_cast<size_t>(c.row * cols + c.col)] + 1;
      frontier.push_back(n);
    }
  }
  return dist;
}

}  // namespace rqn::envs

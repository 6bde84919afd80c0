#ifndef RQN_ENVS_GRID_H_
#define RQN_ENVS_GRID_H_

#include <vector>

namespace rqn::envs {

struct Cell {
  int row = 0;
  int col = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Movement actions shared by the gridworlds.
enum GridAction : int { kUp = 0, kDown = 1, kLeft = 2, kRight = 3, kStay = 4 };
inline constexpr int kNumMoveActions = 5;

Cell moved(Cell c, int action);
bool adjacent(Cell a, Cell b);  // 4-neighbourhood
int manhattan(Cell a, Cell b);

// Normalised coordinate in [0, 1]; a 1-wide axis maps to 0.
double normalized(int v, int extent);

// Breadth-first distances from `from` over a rows x cols grid; blocked[r*cols+c]
// marks impassable cells. Unreachable cells get -1.
std::vector<int> bfs_distances(int rows, int cols, const std::vector<bool>& blocked, Cell from);

}  // namespace rqn::envs

#endif  // RQN_ENVS_GRID_H_

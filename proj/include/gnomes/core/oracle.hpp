#pragma once

#include <optional>
#include <vector>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/core/types.hpp"

namespace gnomes {

struct PlanStep {
  Player player;
  Direction action;

  friend bool operator==(const PlanStep&, const PlanStep&) = default;
};

/// Minimum-turn plan for the joint game, found by breadth-first search over
/// (cell, player-to-move) where each mover uses its own side's valid actions.
/// Empty plan when start == goal; nullopt when the goal is unreachable.
std::optional<std::vector<PlanStep>> joint_oracle(const MazeSide& ego_side, const MazeSide& human_side,
                                                  Cell start, Cell goal, Player first_mover);

/// Single-side BFS distances (in moves) to `target`; -1 for unreachable cells.
/// Indexed row-major.
std::vector<int> distances_to(const MazeSide& side, Cell target);

/// Moves on `side` that step onto a shortest path toward `target`. Empty when
/// already there or unreachable.
DirectionSet shortest_path_moves(const MazeSide& side, const std::vector<int>& distances, Cell from);

}  // namespace gnomes

#include "gnomes/core/oracle.hpp"

#include <algorithm>
#include <deque>

namespace gnomes {

std::optional<std::vector<PlanStep>> joint_oracle(const MazeSide& ego_side, const MazeSide& human_side,
                                                  Cell start, Cell goal, Player first_mover) {
  if (!ego_side.contains(start) || !ego_side.contains(goal))
    throw InputError("oracle endpoints must lie inside the maze");
  if (start == goal) return std::vector<PlanStep>{};

  const int w = ego_side.width();
  const int cells = w * ego_side.height();
  auto key = [&](Cell c, Player p) { return (c.y * w + c.x) * 2 + static_cast<int>(p); };

  struct Back {
    int prev = -1;
    Direction action = Direction::Noop;
  };
  std::vector<Back> back(static_cast<std::size_t>(cells * 2));
  std::vector<char> seen(static_cast<std::size_t>(cells * 2), 0);
  std::deque<std::pair<Cell, Player>> frontier;
  seen[static_cast<std::size_t>(key(start, first_mover))] = 1;
  frontier.emplace_back(start, first_mover);

  while (!frontier.empty()) {
    auto [cell, mover] = frontier.front();
    frontier.pop_front();
    const MazeSide& side = mover == Player::Ego ? ego_side : human_side;
    const int from = key(cell, mover);
    std::optional<int> reached;
    side.valid_actions(cell).for_each([&](Direction d) {
      if (reached) return;
      const Cell next = neighbor(cell, d);
      const int k = key(next, other(mover));
      if (seen[static_cast<std::size_t>(k)]) return;
      seen[static_cast<std::size_t>(k)] = 1;
      back[static_cast<std::size_t>(k)] = {from, d};
      if (next == goal) {
        reached = k;
        return;
      }
      frontier.emplace_back(next, other(mover));
    });
    if (reached) {
      std::vector<PlanStep> plan;
      for (int k = *reached; k != key(start, first_mover); k = back[static_cast<std::size_t>(k)].prev) {
        const int prev = back[static_cast<std::size_t>(k)].prev;
        plan.push_back({static_cast<Player>(prev % 2), back[static_cast<std::size_t>(k)].action});
      }
      std::reverse(plan.begin(), plan.end());
      return plan;
    }
  }
  return std::nullopt;
}

std::vector<int> distances_to(const MazeSide& side, Cell target) {
  const int w = side.width();
  std::vector<int> dist(static_cast<std::size_t>(w * side.height()), -1);
  auto at = [&](Cell c) -> int& { return dist[static_cast<std::size_t>(c.y * w + c.x)]; };
  std::deque<Cell> frontier{target};
  at(target) = 0;
  while (!frontier.empty()) {
    const Cell c = frontier.front();
    frontier.pop_front();
    for (Direction d : kMoveDirections) {
      if (side.blocked(c, d)) continue;
      const Cell n = neighbor(c, d);
      if (at(n) >= 0) continue;
      at(n) = at(c) + 1;
      frontier.push_back(n);
    }
  }
  return dist;
}

DirectionSet shortest_path_moves(const MazeSide& side, const std::vector<int>& distances, Cell from) {
  const int w = side.width();
  auto at = [&](Cell c) { return distances[static_cast<std::size_t>(c.y * w + c.x)]; };
  DirectionSet out;
  const int here = at(from);
  if (here <= 0) return out;
  for (Direction d : kMoveDirections)
    if (!side.blocked(from, d) && at(neighbor(from, d)) == here - 1) out.insert(d);
  return out;
}

}  // namespace gnomes

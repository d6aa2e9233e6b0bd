#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/core/types.hpp"

namespace gnomes {

inline constexpr int kDefaultMazeSize = 9;
inline constexpr int kRoundsPerGame = 5;

struct GameState {
  Cell token;
  Player in_control = Player::Human;
  int turn = 0;
  Cell treasure;
  Player treasure_side = Player::Human;
  int round = 1;

  friend bool operator==(const GameState&, const GameState&) = default;
};

struct RewardSpec {
  double goal_reward = 1.0;
  double step_penalty = -0.01;
  double wall_penalty = -0.05;

  /// Throws InputError unless goal_reward > 0 and both penalties are <= 0.
  void validate() const;
};

enum class Outcome { Moved, Blocked, ReachedGoal };

/// Thrown by apply() when the mover's own side has a wall in the way.
class RejectedMove : public std::runtime_error {
 public:
  RejectedMove(Cell cell, Direction direction);
  Cell cell() const { return cell_; }
  Direction direction() const { return direction_; }

 private:
  Cell cell_;
  Direction direction_;
};

/// Moves the token with `side`'s transition function and passes control.
GameState apply(const MazeSide& side, const GameState& state, Direction action);

struct AttemptResult {
  GameState state;
  Outcome outcome;
};

/// Like apply(), but a blocked move leaves the state untouched (control kept,
/// turn not advanced) and reports Outcome::Blocked instead of throwing.
AttemptResult attempt(const MazeSide& side, const GameState& state, Direction action);

double reward(const RewardSpec& spec, const GameState& state, Direction action, Outcome outcome);

inline bool is_final(const GameState& state) { return state.token == state.treasure; }

struct RoundSpec {
  Cell treasure;
  Player treasure_side;

  friend bool operator==(const RoundSpec&, const RoundSpec&) = default;
};

/// Treasure visibility per round: H, E, H, E, H.
constexpr Player scheduled_treasure_side(int round) {
  return round % 2 == 1 ? Player::Human : Player::Ego;
}

/// Both board sides plus start cell and per-round treasures.
struct Layout {
  MazeSide ego_side;
  MazeSide human_side;
  Cell start;
  std::vector<RoundSpec> rounds;

  int width() const { return ego_side.width(); }
  int height() const { return ego_side.height(); }
  const MazeSide& side_of(Player p) const { return p == Player::Ego ? ego_side : human_side; }

  /// Initial state of a round (1-based). Every round starts from `start`.
  GameState initial_state(int round, Player first_mover = Player::Human) const;

  friend bool operator==(const Layout&, const Layout&) = default;
};

}  // namespace gnomes

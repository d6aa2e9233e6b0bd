#include "gnomes/core/game.hpp"

#include <string>

namespace gnomes {

void RewardSpec::validate() const {
  if (!(goal_reward > 0.0)) throw InputError("goal_reward must be positive");
  if (step_penalty > 0.0 || wall_penalty > 0.0) throw InputError("penalties must be <= 0");
}

RejectedMove::RejectedMove(Cell cell, Direction direction)
    : std::runtime_error("wall blocks " + std::string(to_string(direction)) + " at " + to_string(cell)),
      cell_(cell),
      direction_(direction) {}

GameState apply(const MazeSide& side, const GameState& state, Direction action) {
  if (side.blocked(state.token, action)) throw RejectedMove(state.token, action);
  GameState next = state;
  next.token = neighbor(state.token, action);
  next.in_control = other(state.in_control);
  ++next.turn;
  return next;
}

AttemptResult attempt(const MazeSide& side, const GameState& state, Direction action) {
  if (side.blocked(state.token, action)) return {state, Outcome::Blocked};
  GameState next = apply(side, state, action);
  return {next, is_final(next) ? Outcome::ReachedGoal : Outcome::Moved};
}

double reward(const RewardSpec& spec, const GameState&, Direction, Outcome outcome) {
  switch (outcome) {
    case Outcome::ReachedGoal: return spec.goal_reward;
    case Outcome::Blocked: return spec.wall_penalty + spec.step_penalty;
    case Outcome::Moved: return spec.step_penalty;
  }
  return spec.step_penalty;
}

GameState Layout::initial_state(int round, Player first_mover) const {
  if (round < 1 || round > static_cast<int>(rounds.size()))
    throw InputError("round " + std::to_string(round) + " is not in the layout");
  const RoundSpec& spec = rounds[static_cast<std::size_t>(round - 1)];
  GameState s;
  s.token = start;
  s.in_control = first_mover;
  s.turn = 0;
  s.treasure = spec.treasure;
  s.treasure_side = spec.treasure_side;
  s.round = round;
  return s;
}

}  // namespace gnomes

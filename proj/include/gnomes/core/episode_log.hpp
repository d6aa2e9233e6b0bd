#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gnomes/core/game.hpp"
#include "gnomes/planner/flag.hpp"

namespace gnomes {

/// One turn of play. `state` is the pre-move state; `post_token` where the token ended up.
struct LogEntry {
  int turn = 0;
  Player player = Player::Human;
  GameState state;
  Direction action = Direction::Noop;
  Outcome outcome = Outcome::Moved;
  Cell post_token;
  Flag flag_in = Flag::None;
  Flag flag_out = Flag::None;
  std::string message_in;
  std::string message_out;
  double reward = 0.0;
};

struct EpisodeLog {
  int round = 1;
  GameState initial;
  std::vector<LogEntry> entries;
  /// Turn index at which play stopped (number of applied turns).
  int turns = 0;
  bool solved = false;
  double duration_seconds = 0.0;

  double total_reward() const;
  int message_count(Player sender) const;
  /// Mean message length in characters, 0 when no messages were sent.
  double mean_message_length(Player sender) const;
};

/// Re-applies every logged action with the mover's side. Throws InputError if
/// the log is inconsistent with the layout (invalid move, wrong mover, drift).
GameState replay(const Layout& layout, const EpisodeLog& log);

void to_json(nlohmann::json& j, const Cell& c);
void from_json(const nlohmann::json& j, Cell& c);
void to_json(nlohmann::json& j, const GameState& s);
void from_json(const nlohmann::json& j, GameState& s);
void to_json(nlohmann::json& j, const LogEntry& e);
void from_json(const nlohmann::json& j, LogEntry& e);
void to_json(nlohmann::json& j, const EpisodeLog& log);
void from_json(const nlohmann::json& j, EpisodeLog& log);

}  // namespace gnomes

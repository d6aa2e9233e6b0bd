#pragma once

#include <optional>
#include <string>

#include "gnomes/core/types.hpp"

namespace gnomes {

inline constexpr std::size_t kMaxMessageLength = 500;

struct MessageText {
  std::string text;
  Player sender = Player::Human;
  int turn = 0;
};

/// Throws InputError for messages longer than kMaxMessageLength characters.
MessageText ingest_message(std::string text, Player sender, int turn);

/// Game facts handed to the language layer when answering an inquiry.
struct GameInfoSnapshot {
  Cell token;
  Direction action = Direction::Noop;
  /// Present iff the treasure is visible to the ego player.
  std::optional<Cell> treasure;

  bool treasure_visible() const { return treasure.has_value(); }
};

}  // namespace gnomes

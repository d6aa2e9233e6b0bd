#include "gnomes/core/types.hpp"

#include <algorithm>
#include <cctype>

namespace gnomes {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::Noop: return "noop";
    case Direction::Right: return "right";
    case Direction::Up: return "up";
    case Direction::Left: return "left";
    case Direction::Down: return "down";
  }
  return "noop";
}

std::optional<Direction> parse_direction(std::string_view word) {
  std::string lower(word);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  for (Direction d : kAllDirections)
    if (lower == to_string(d)) return d;
  return std::nullopt;
}

std::string_view to_string(Player p) { return p == Player::Ego ? "E" : "H"; }

std::optional<Player> parse_player(std::string_view s) {
  if (s == "E") return Player::Ego;
  if (s == "H") return Player::Human;
  return std::nullopt;
}

std::string to_string(Cell c) {
  return "[" + std::to_string(c.x) + "," + std::to_string(c.y) + "]";
}

std::string to_string(DirectionSet s) {
  std::string out = "{";
  s.for_each([&](Direction d) {
    if (out.size() > 1) out += ",";
    out += to_string(d);
  });
  return out + "}";
}

}  // namespace gnomes

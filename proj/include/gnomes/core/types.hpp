#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace gnomes {

/// One of the five moves shared by both players. Values double as indices.
enum class Direction : std::uint8_t { Noop = 0, Right = 1, Up = 2, Left = 3, Down = 4 };

inline constexpr std::array<Direction, 5> kAllDirections = {
    Direction::Noop, Direction::Right, Direction::Up, Direction::Left, Direction::Down};

inline constexpr std::array<Direction, 4> kMoveDirections = {
    Direction::Right, Direction::Up, Direction::Left, Direction::Down};

constexpr int index_of(Direction d) { return static_cast<int>(d); }

constexpr Direction opposite(Direction d) {
  switch (d) {
    case Direction::Right: return Direction::Left;
    case Direction::Left: return Direction::Right;
    case Direction::Up: return Direction::Down;
    case Direction::Down: return Direction::Up;
    case Direction::Noop: break;
  }
  return Direction::Noop;
}

/// Lower-case action word as used in flags and message templates.
std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view word);

enum class Player : std::uint8_t { Ego = 0, Human = 1 };

constexpr Player other(Player p) { return p == Player::Ego ? Player::Human : Player::Ego; }

/// "E" or "H".
std::string_view to_string(Player p);
std::optional<Player> parse_player(std::string_view s);

/// Grid coordinate; origin top-left, x grows rightward, y grows downward.
struct Cell {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Cell, Cell) = default;
  friend constexpr auto operator<=>(Cell, Cell) = default;
};

/// Neighbor in direction `d`, without any bounds check.
constexpr Cell neighbor(Cell c, Direction d) {
  switch (d) {
    case Direction::Right: return {c.x + 1, c.y};
    case Direction::Left: return {c.x - 1, c.y};
    case Direction::Up: return {c.x, c.y - 1};
    case Direction::Down: return {c.x, c.y + 1};
    case Direction::Noop: break;
  }
  return c;
}

std::string to_string(Cell c);

/// Small set of directions backed by a 5-bit mask.
class DirectionSet {
 public:
  constexpr DirectionSet() = default;
  constexpr DirectionSet(std::initializer_list<Direction> dirs) {
    for (Direction d : dirs) insert(d);
  }

  static constexpr DirectionSet all() { return from_bits(0x1F); }
  static constexpr DirectionSet from_bits(std::uint8_t bits) {
    DirectionSet s;
    s.bits_ = bits & 0x1F;
    return s;
  }

  constexpr void insert(Direction d) { bits_ |= bit(d); }
  constexpr void erase(Direction d) { bits_ &= static_cast<std::uint8_t>(~bit(d)); }
  constexpr bool contains(Direction d) const { return (bits_ & bit(d)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr std::uint8_t bits() const { return bits_; }

  constexpr DirectionSet operator-(DirectionSet rhs) const {
    return from_bits(static_cast<std::uint8_t>(bits_ & ~rhs.bits_));
  }
  constexpr DirectionSet operator|(DirectionSet rhs) const {
    return from_bits(static_cast<std::uint8_t>(bits_ | rhs.bits_));
  }

  friend constexpr bool operator==(DirectionSet, DirectionSet) = default;

  /// Members in enum order.
  template <typename F>
  constexpr void for_each(F&& f) const {
    for (Direction d : kAllDirections)
      if (contains(d)) f(d);
  }

 private:
  static constexpr std::uint8_t bit(Direction d) {
    return static_cast<std::uint8_t>(1u << index_of(d));
  }
  std::uint8_t bits_ = 0;
};

std::string to_string(DirectionSet s);

}  // namespace gnomes

template <>
struct std::hash<gnomes::Cell> {
  std::size_t operator()(gnomes::Cell c) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(c.x) << 32) ^ static_cast<unsigned>(c.y));
  }
};

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "gnomes/core/types.hpp"

namespace gnomes {

/// Intent alphabet exchanged between language and planning. The first five
/// values mirror Direction one-to-one.
enum class Flag : std::uint8_t {
  Noop = 0,
  Right = 1,
  Up = 2,
  Left = 3,
  Down = 4,
  Accept = 5,
  Reject = 6,
  Inquiry = 7,
  None = 8,
};

inline constexpr std::array<Flag, 9> kAllFlags = {Flag::Noop,   Flag::Right,  Flag::Up,      Flag::Left, Flag::Down,
                                                  Flag::Accept, Flag::Reject, Flag::Inquiry, Flag::None};

constexpr Flag to_flag(Direction d) { return static_cast<Flag>(static_cast<std::uint8_t>(d)); }

constexpr bool is_action(Flag f) { return static_cast<std::uint8_t>(f) <= static_cast<std::uint8_t>(Flag::Down); }

constexpr std::optional<Direction> as_direction(Flag f) {
  if (!is_action(f)) return std::nullopt;
  return static_cast<Direction>(static_cast<std::uint8_t>(f));
}

/// Label as written in the classification prompt: action words lower-case,
/// response flags capitalised.
constexpr std::string_view to_string(Flag f) {
  switch (f) {
    case Flag::Noop: return "noop";
    case Flag::Right: return "right";
    case Flag::Up: return "up";
    case Flag::Left: return "left";
    case Flag::Down: return "down";
    case Flag::Accept: return "Accept";
    case Flag::Reject: return "Reject";
    case Flag::Inquiry: return "Inquiry";
    case Flag::None: return "None";
  }
  return "None";
}

/// Case-insensitive inverse of to_string.
constexpr std::optional<Flag> parse_flag(std::string_view s) {
  auto lower = [](char c) { return c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : c; };
  for (Flag f : kAllFlags) {
    const std::string_view label = to_string(f);
    if (label.size() != s.size()) continue;
    bool same = true;
    for (std::size_t i = 0; i < s.size() && same; ++i) same = lower(s[i]) == lower(label[i]);
    if (same) return f;
  }
  return std::nullopt;
}

}  // namespace gnomes

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gnomes/core/game.hpp"

namespace gnomes {

/// Loader diagnostic carrying the 1-based line that failed.
class MazeFormatError : public std::runtime_error {
 public:
  MazeFormatError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Text format, version 1:
///
///   gnomes-maze v1 <W> <H>
///   <H rows of W hex digits>     ego side
///   <H rows of W hex digits>     human side
///   start <x> <y>
///   treasure <round> <x> <y> <E|H>   (one per round)
///
/// Each digit is a wall bitmask: bit0=Right, bit1=Up, bit2=Left, bit3=Down.
/// Blank lines and lines starting with '#' are ignored on load.
std::string to_maze_text(const Layout& layout);
Layout parse_maze_text(std::string_view text);

Layout load_maze_file(const std::filesystem::path& path);
void save_maze_file(const std::filesystem::path& path, const Layout& layout);

}  // namespace gnomes

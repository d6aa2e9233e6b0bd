#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gnomes/core/types.hpp"

namespace gnomes {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One player's private wall layout. Walls are stored per cell as a bitmask
/// (bit0=Right, bit1=Up, bit2=Left, bit3=Down). Every mutator keeps the
/// layout symmetric and the outer boundary closed.
class MazeSide {
 public:
  static constexpr std::uint8_t kRightBit = 1;
  static constexpr std::uint8_t kUpBit = 2;
  static constexpr std::uint8_t kLeftBit = 4;
  static constexpr std::uint8_t kDownBit = 8;

  /// Only boundary walls.
  static MazeSide open(int width, int height);
  /// Every edge walled.
  static MazeSide closed(int width, int height);
  /// Row-major masks; throws InputError when symmetry or closure is violated.
  static MazeSide from_masks(int width, int height, std::vector<std::uint8_t> masks);

  int width() const { return width_; }
  int height() const { return height_; }
  bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }

  std::uint8_t mask(Cell c) const;
  /// Noop is never blocked.
  bool blocked(Cell c, Direction d) const;
  /// {Noop} plus every unblocked move. Throws InputError for off-grid cells.
  DirectionSet valid_actions(Cell c) const;

  /// No-ops for boundary edges, which always stay walled.
  void add_wall(Cell c, Direction d);
  void remove_wall(Cell c, Direction d);

  /// Number of interior edges (each counted once) that are walled.
  int interior_wall_count() const;

  const std::vector<std::uint8_t>& masks() const { return masks_; }

  friend bool operator==(const MazeSide&, const MazeSide&) = default;

 private:
  MazeSide(int width, int height, std::vector<std::uint8_t> masks)
      : width_(width), height_(height), masks_(std::move(masks)) {}

  std::size_t offset(Cell c) const { return static_cast<std::size_t>(c.y * width_ + c.x); }
  void require_cell(Cell c) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<std::uint8_t> masks_;
};

constexpr std::uint8_t wall_bit(Direction d) {
  return d == Direction::Noop ? 0 : static_cast<std::uint8_t>(1u << (index_of(d) - 1));
}

/// Describes the first symmetry/closure violation, or empty when the masks are consistent.
std::string find_wall_violation(int width, int height, const std::vector<std::uint8_t>& masks);

}  // namespace gnomes

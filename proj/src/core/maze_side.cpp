#include "gnomes/core/maze_side.hpp"

#include <sstream>

namespace gnomes {

MazeSide MazeSide::open(int width, int height) {
  if (width < 1 || height < 1) throw InputError("maze dimensions must be positive");
  MazeSide side(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width * height), 0));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      std::uint8_t& m = side.masks_[side.offset({x, y})];
      if (x == 0) m |= kLeftBit;
      if (x == width - 1) m |= kRightBit;
      if (y == 0) m |= kUpBit;
      if (y == height - 1) m |= kDownBit;
    }
  }
  return side;
}

MazeSide MazeSide::closed(int width, int height) {
  if (width < 1 || height < 1) throw InputError("maze dimensions must be positive");
  return MazeSide(width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width * height), 0x0F));
}

MazeSide MazeSide::from_masks(int width, int height, std::vector<std::uint8_t> masks) {
  if (width < 1 || height < 1) throw InputError("maze dimensions must be positive");
  if (masks.size() != static_cast<std::size_t>(width * height))
    throw InputError("mask count does not match maze dimensions");
  if (auto violation = find_wall_violation(width, height, masks); !violation.empty())
    throw InputError(violation);
  return MazeSide(width, height, std::move(masks));
}

std::string find_wall_violation(int width, int height, const std::vector<std::uint8_t>& masks) {
  auto at = [&](int x, int y) { return masks[static_cast<std::size_t>(y * width + x)]; };
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint8_t m = at(x, y);
      std::ostringstream msg;
      msg << "cell (" << x << "," << y << "): ";
      if (m > 0x0F) return msg.str() + "mask uses bits above bit3";
      if (x == 0 && !(m & MazeSide::kLeftBit)) return msg.str() + "boundary open on the left";
      if (x == width - 1 && !(m & MazeSide::kRightBit)) return msg.str() + "boundary open on the right";
      if (y == 0 && !(m & MazeSide::kUpBit)) return msg.str() + "boundary open upward";
      if (y == height - 1 && !(m & MazeSide::kDownBit)) return msg.str() + "boundary open downward";
      if (x + 1 < width && bool(m & MazeSide::kRightBit) != bool(at(x + 1, y) & MazeSide::kLeftBit))
        return msg.str() + "right wall not mirrored by left wall of (" + std::to_string(x + 1) + "," +
               std::to_string(y) + ")";
      if (y + 1 < height && bool(m & MazeSide::kDownBit) != bool(at(x, y + 1) & MazeSide::kUpBit))
        return msg.str() + "down wall not mirrored by up wall of (" + std::to_string(x) + "," +
               std::to_string(y + 1) + ")";
    }
  }
  return {};
}

void MazeSide::require_cell(Cell c) const {
  if (!contains(c)) throw InputError("cell " + to_string(c) + " is outside the maze");
}

std::uint8_t MazeSide::mask(Cell c) const {
  require_cell(c);
  return masks_[offset(c)];
}

bool MazeSide::blocked(Cell c, Direction d) const { return (mask(c) & wall_bit(d)) != 0; }

DirectionSet MazeSide::valid_actions(Cell c) const {
  const std::uint8_t m = mask(c);
  DirectionSet out{Direction::Noop};
  for (Direction d : kMoveDirections)
    if (!(m & wall_bit(d))) out.insert(d);
  return out;
}

void MazeSide::add_wall(Cell c, Direction d) {
  require_cell(c);
  if (d == Direction::Noop) return;
  const Cell n = neighbor(c, d);
  if (!contains(n)) return;
  masks_[offset(c)] |= wall_bit(d);
  masks_[offset(n)] |= wall_bit(opposite(d));
}

void MazeSide::remove_wall(Cell c, Direction d) {
  require_cell(c);
  if (d == Direction::Noop) return;
  const Cell n = neighbor(c, d);
  if (!contains(n)) return;
  masks_[offset(c)] &= static_cast<std::uint8_t>(~wall_bit(d));
  masks_[offset(n)] &= static_cast<std::uint8_t>(~wall_bit(opposite(d)));
}

int MazeSide::interior_wall_count() const {
  int count = 0;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const std::uint8_t m = masks_[offset({x, y})];
      if (x + 1 < width_ && (m & kRightBit)) ++count;
      if (y + 1 < height_ && (m & kDownBit)) ++count;
    }
  }
  return count;
}

}  // namespace gnomes

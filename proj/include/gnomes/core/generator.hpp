#pragma once

#include <cstdint>

#include "gnomes/core/game.hpp"

namespace gnomes {

struct MazePair {
  MazeSide ego_side;
  MazeSide human_side;
  Cell start;
  Cell treasure;
};

struct GeneratorOptions {
  /// Probability of knocking out each interior wall left by the backtracker.
  double removal_density = 0.15;
  int rounds = kRoundsPerGame;
};

/// Recursive-backtracker maze for each side, thinned independently, with a
/// start and treasure the joint game can reach. Pure in (seed, width, height).
MazePair generate_maze_pair(std::uint64_t seed, int width = kDefaultMazeSize, int height = kDefaultMazeSize,
                            const GeneratorOptions& options = {});

/// Full multi-round layout: one start cell, distinct treasures per round with
/// the H/E/H/E/H visibility schedule. Every round is jointly solvable from start.
Layout generate_layout(std::uint64_t seed, int width = kDefaultMazeSize, int height = kDefaultMazeSize,
                       const GeneratorOptions& options = {});

/// A single side as described above, exposed for tests.
MazeSide generate_side(std::uint64_t seed, int width, int height, double removal_density);

}  // namespace gnomes

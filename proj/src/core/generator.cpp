#include "gnomes/core/generator.hpp"

#include <vector>

#include "gnomes/core/oracle.hpp"
#include "gnomes/core/random.hpp"

namespace gnomes {
namespace {

constexpr int kMaxAttempts = 1000;

Cell random_cell(Rng& rng, int width, int height) {
  return {static_cast<int>(rng.below(static_cast<std::uint64_t>(width))),
          static_cast<int>(rng.below(static_cast<std::uint64_t>(height)))};
}

}  // namespace

MazeSide generate_side(std::uint64_t seed, int width, int height, double removal_density) {
  if (width < 2 || height < 2) throw InputError("maze must be at least 2x2");
  Rng rng(seed);
  MazeSide side = MazeSide::closed(width, height);
  std::vector<char> visited(static_cast<std::size_t>(width * height), 0);
  auto seen = [&](Cell c) -> char& { return visited[static_cast<std::size_t>(c.y * width + c.x)]; };

  std::vector<Cell> stack{random_cell(rng, width, height)};
  seen(stack.back()) = 1;
  while (!stack.empty()) {
    const Cell c = stack.back();
    std::vector<Direction> options;
    for (Direction d : kMoveDirections) {
      const Cell n = neighbor(c, d);
      if (side.contains(n) && !seen(n)) options.push_back(d);
    }
    if (options.empty()) {
      stack.pop_back();
      continue;
    }
    const Direction d = rng.pick(std::span<const Direction>(options));
    side.remove_wall(c, d);
    seen(neighbor(c, d)) = 1;
    stack.push_back(neighbor(c, d));
  }

  // Knock out extra interior walls so the two sides differ in more than tree shape.
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (Direction d : {Direction::Right, Direction::Down}) {
        const Cell c{x, y};
        if (!side.contains(neighbor(c, d)) || !side.blocked(c, d)) continue;
        if (rng.bernoulli(removal_density)) side.remove_wall(c, d);
      }
    }
  }
  return side;
}

MazePair generate_maze_pair(std::uint64_t seed, int width, int height, const GeneratorOptions& options) {
  GeneratorOptions single = options;
  single.rounds = 1;
  Layout layout = generate_layout(seed, width, height, single);
  return {std::move(layout.ego_side), std::move(layout.human_side), layout.start, layout.rounds.front().treasure};
}

Layout generate_layout(std::uint64_t seed, int width, int height, const GeneratorOptions& options) {
  if (width < 2 || height < 2) throw InputError("maze must be at least 2x2");
  if (options.rounds < 1 || options.rounds > width * height - 1)
    throw InputError("round count does not fit the maze");

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const std::uint64_t base = Rng::derive(seed, static_cast<std::uint64_t>(attempt));
    MazeSide ego = generate_side(Rng::derive(base, 1), width, height, options.removal_density);
    MazeSide human = generate_side(Rng::derive(base, 2), width, height, options.removal_density);
    Rng rng(Rng::derive(base, 3));

    const Cell start = random_cell(rng, width, height);
    std::vector<RoundSpec> rounds;
    bool solvable = true;
    while (static_cast<int>(rounds.size()) < options.rounds) {
      const Cell t = random_cell(rng, width, height);
      bool taken = t == start;
      for (const RoundSpec& r : rounds) taken = taken || r.treasure == t;
      if (taken) continue;
      if (!joint_oracle(ego, human, start, t, Player::Human)) {
        solvable = false;
        break;
      }
      rounds.push_back({t, scheduled_treasure_side(static_cast<int>(rounds.size()) + 1)});
    }
    if (solvable) return Layout{std::move(ego), std::move(human), start, std::move(rounds)};
  }
  throw InputError("could not generate a solvable layout");
}

}  // namespace gnomes

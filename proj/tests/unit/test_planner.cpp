#include <doctest.h>

#include <set>

#include "gnomes/core/generator.hpp"
#include "gnomes/planner/aismcts.hpp"
#include "support/fixtures.hpp"

using namespace gnomes;
using gnomes::testing::MinimalMaze;

namespace {

PlannerConfig with_iterations(int n) {
  PlannerConfig c;
  c.iterations = n;
  return c;
}

}  // namespace

TEST_CASE("planner config validation") {
  CHECK_THROWS_AS(with_iterations(0).validate(), InputError);
  PlannerConfig c;
  c.exploration = -1.0;
  CHECK_THROWS_AS(c.validate(), InputError);
  CHECK(PlannerConfig{}.iterations == 100);
  CHECK(PlannerConfig{}.exploration == doctest::Approx(std::sqrt(2.0)));
  CHECK(PlannerConfig{}.effective_rollout_cap(9, 9) == 324);
}

TEST_CASE("explore: fresh ego node drains its valid actions") {
  MazeSide side = MazeSide::open(2, 1);  // at (0,0): {Noop, Right}
  Planner planner(EgoView{side, std::nullopt, RewardSpec{}});
  SearchTree tree({0, 0}, Player::Ego);
  Rng rng(1);
  HiddenInfoDict omega;
  std::set<Direction> seen;
  for (int i = 0; i < 2; ++i) {
    const Direction a = planner.explore(tree, tree.root(), {0, 0}, Player::Ego, omega, false, rng);
    tree.add_child(tree.root(), a, neighbor({0, 0}, a), Player::Human);
    seen.insert(a);
  }
  CHECK(seen == std::set<Direction>{Direction::Noop, Direction::Right});
  CHECK(tree.node(tree.root()).untried->empty());
}

TEST_CASE("explore: partner node excludes rejected actions") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  const HiddenInfoDict omega = maze.omega();
  CHECK(planner.candidate_actions(MinimalMaze::s, Player::Human, omega) ==
        DirectionSet{Direction::Noop, Direction::Right, Direction::Up, Direction::Down});
  CHECK(planner.candidate_actions(MinimalMaze::s_d, Player::Human, omega) ==
        DirectionSet{Direction::Noop, Direction::Right, Direction::Up});
  CHECK(planner.candidate_actions(MinimalMaze::s, Player::Ego, omega) ==
        DirectionSet{Direction::Noop, Direction::Down});

  SearchTree tree(MinimalMaze::s, Player::Human);
  Rng rng(9);
  std::set<Direction> popped;
  for (int i = 0; i < 4; ++i) {
    const Direction a = planner.explore(tree, tree.root(), MinimalMaze::s, Player::Human, omega, false, rng);
    tree.add_child(tree.root(), a, neighbor(MinimalMaze::s, a), Player::Ego);
    popped.insert(a);
  }
  CHECK(popped == std::set<Direction>{Direction::Noop, Direction::Right, Direction::Up, Direction::Down});

  // Simulation draws from the same set.
  for (int i = 0; i < 200; ++i) {
    const Direction a = planner.explore(tree, tree.root(), MinimalMaze::s, Player::Human, omega, true, rng);
    CHECK(a != Direction::Left);
  }
}

TEST_CASE("explore: exhausted node follows the best-ucb child") {
  MazeSide side = MazeSide::open(2, 1);
  Planner planner(EgoView{side, std::nullopt, RewardSpec{}});
  SearchTree tree({0, 0}, Player::Ego);
  tree.node(tree.root()).untried = std::vector<Direction>{};
  const NodeId stay = tree.add_child(tree.root(), Direction::Noop, {0, 0}, Player::Human);
  const NodeId go = tree.add_child(tree.root(), Direction::Right, {1, 0}, Player::Human);
  backpropagate(tree, stay, -1.0);
  backpropagate(tree, go, 1.0);
  Rng rng(3);
  HiddenInfoDict omega;
  CHECK(planner.explore(tree, tree.root(), {0, 0}, Player::Ego, omega, false, rng) == Direction::Right);
}

TEST_CASE("plan: only Noop valid for the ego") {
  const MazeSide side = MazeSide::closed(3, 3);
  Planner planner(EgoView{side, Cell{2, 2}, RewardSpec{}});
  GameState s;
  s.token = {1, 1};
  s.treasure = {2, 2};
  s.in_control = Player::Ego;
  PlannerMemory memory;
  CHECK(planner.plan(s, Flag::None, memory).action == Direction::Noop);
}

TEST_CASE("plan: refuses final states and the partner's turn") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  PlannerMemory memory;
  GameState s = maze.state();
  s.token = s.treasure;
  CHECK_THROWS_AS(planner.plan(s, Flag::None, memory), NoPlanError);
  s = maze.state();
  s.in_control = Player::Human;
  CHECK_THROWS_AS(planner.plan(s, Flag::None, memory), InputError);
}

TEST_CASE("plan: input flag breaks a visit tie between Noop and Down") {
  const MinimalMaze maze;
  Planner planner(maze.view(), with_iterations(2));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    PlannerMemory memory{maze.omega(), Flag::None, seed, 0, {}};
    const Decision d = planner.plan(maze.state(), Flag::Down, memory);
    const SearchTree& tree = planner.ego_tree();
    REQUIRE(tree.node(tree.node(tree.root()).child(Direction::Noop)).visits ==
            tree.node(tree.node(tree.root()).child(Direction::Down)).visits);
    CHECK(d.action == Direction::Down);
  }
}

TEST_CASE("plan: without a flag the tie is broken at random") {
  const MinimalMaze maze;
  Planner planner(maze.view(), with_iterations(2));
  std::set<Direction> actions;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    PlannerMemory memory{maze.omega(), Flag::None, seed, 0, {}};
    actions.insert(planner.plan(maze.state(), Flag::None, memory).action);
  }
  CHECK(actions == std::set<Direction>{Direction::Noop, Direction::Down});
}

TEST_CASE("plan: after going down the ego asks the partner to move right") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PlannerMemory memory{maze.omega(), Flag::None, seed, 0, {}};
    const Decision d = planner.plan(maze.state(), Flag::Down, memory);
    CHECK(d.action == Direction::Down);
    CHECK(d.flag == Flag::Right);
    CHECK(memory.last_flag == Flag::Right);
  }
}

TEST_CASE("select_best_action: flag state machine") {
  const MinimalMaze maze;
  Planner planner(maze.view(), with_iterations(60));
  PlannerMemory memory{maze.omega(), Flag::None, 5, 0, {}};
  (void)planner.plan(maze.state(), Flag::None, memory);
  const SearchTree tree = planner.ego_tree();
  Rng rng(17);

  SUBCASE("Inquiry is answered with Inquiry") {
    CHECK(planner.select_best_action(tree, Flag::Inquiry, memory, rng).flag == Flag::Inquiry);
    CHECK(memory.last_flag == Flag::Inquiry);
  }
  SUBCASE("Reject records the last proposal at the root cell") {
    memory.last_flag = Flag::Right;
    memory.last_flag_cell.reset();
    (void)planner.select_best_action(tree, Flag::Reject, memory, rng);
    CHECK(memory.omega.rejected(MinimalMaze::s).contains(Direction::Right));
  }
  SUBCASE("Reject after a non-move flag is an anomaly and leaves omega alone") {
    memory.last_flag = Flag::Inquiry;
    const HiddenInfoDict before = memory.omega;
    (void)planner.select_best_action(tree, Flag::Reject, memory, rng);
    CHECK(memory.omega == before);
    CHECK(memory.protocol_anomalies == 1);
  }
  SUBCASE("a request the ego cannot perform is rejected") {
    CHECK(planner.select_best_action(tree, Flag::Left, memory, rng).flag == Flag::Reject);
    CHECK(planner.select_best_action(tree, Flag::Up, memory, rng).flag == Flag::Reject);
    CHECK(memory.last_flag == Flag::Reject);
  }
  SUBCASE("Accept and None are inert") {
    const Decision a = planner.select_best_action(tree, Flag::Accept, memory, rng);
    CHECK(a.flag != Flag::Reject);
    CHECK(a.flag != Flag::Inquiry);
  }
}

TEST_CASE("a Reject is recorded for the cell the proposal was made for") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  PlannerMemory memory{maze.omega(), Flag::None, 3, 0, {}};
  const Decision first = planner.plan(maze.state(), Flag::Down, memory);
  REQUIRE(first.flag == Flag::Right);
  REQUIRE(memory.last_flag_cell == MinimalMaze::s_d);

  // Partner refuses and moves on: the token is back at s when the ego replans.
  GameState next = maze.state();
  next.turn += 2;
  (void)planner.plan(next, Flag::Reject, memory);
  CHECK(memory.omega.rejected(MinimalMaze::s_d).contains(Direction::Right));
  CHECK_FALSE(memory.omega.rejected(MinimalMaze::s).contains(Direction::Right));
}

TEST_CASE("select_best_action: no surviving grandchild gives None") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  SearchTree tree(MinimalMaze::s, Player::Ego);
  const NodeId down = tree.add_child(tree.root(), Direction::Down, MinimalMaze::s_d, Player::Human);
  const NodeId left = tree.add_child(down, Direction::Left, {0, 2}, Player::Ego);
  backpropagate(tree, left, 0.0);
  PlannerMemory memory{maze.omega(), Flag::None, 1, 0, {}};
  Rng rng(1);
  const Decision d = planner.select_best_action(tree, Flag::None, memory, rng);
  CHECK(d.action == Direction::Down);
  CHECK(d.flag == Flag::None);
}

TEST_CASE("select_best_action: childless root has no plan") {
  const MinimalMaze maze;
  Planner planner(maze.view());
  SearchTree tree(MinimalMaze::s, Player::Ego);
  PlannerMemory memory;
  Rng rng(1);
  CHECK_THROWS_AS(planner.select_best_action(tree, Flag::None, memory, rng), NoPlanError);
}

TEST_CASE("plan: root visits equal the iteration count and growth is one node per iteration") {
  const Layout layout = generate_layout(21);
  GameState s = layout.initial_state(2, Player::Ego);
  EgoView view{layout.ego_side, s.treasure, RewardSpec{}};
  std::size_t previous = 1;
  for (int n = 1; n <= 40; ++n) {
    Planner planner(view, with_iterations(n));
    PlannerMemory memory{{}, Flag::None, 99, 0, {}};
    (void)planner.plan(s, Flag::None, memory);
    CHECK(planner.ego_tree().node(0).visits == n);
    CHECK(planner.human_tree().node(0).visits == n);
    // Same seed, one more iteration: at most one more node per tree.
    CHECK(planner.ego_tree().size() <= previous + 1);
    CHECK(planner.ego_tree().size() >= previous);
    CHECK(planner.human_tree().size() == planner.ego_tree().size());
    previous = planner.ego_tree().size();
  }
}

TEST_CASE("plan: deterministic under a fixed seed") {
  const Layout layout = generate_layout(8);
  const GameState s = layout.initial_state(2, Player::Ego);
  Planner planner(EgoView{layout.ego_side, s.treasure, RewardSpec{}});
  for (Flag f : kAllFlags) {
    PlannerMemory a{{}, Flag::Up, 1234, 0, {}};
    PlannerMemory b = a;
    const Decision da = planner.plan(s, f, a);
    const Decision db = planner.plan(s, f, b);
    CHECK(da == db);
    CHECK(a.omega == b.omega);
    CHECK(a.last_flag == b.last_flag);
  }
}

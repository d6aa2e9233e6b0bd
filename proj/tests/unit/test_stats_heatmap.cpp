#include <doctest.h>

#include <algorithm>

#include "gnomes/core/generator.hpp"
#include "gnomes/harness/experiment.hpp"
#include "gnomes/harness/heatmap.hpp"

using namespace gnomes;

TEST_CASE("median of odd and even samples") {
  CHECK(median({3, 1, 2}) == 2.0);
  CHECK(median({4, 1, 3, 2}) == 2.5);
  CHECK(median({7}) == 7.0);
  CHECK_THROWS_AS(median({}), InputError);
}

TEST_CASE("bootstrap interval of a constant sample collapses") {
  const std::vector<double> sample(25, 4.0);
  const Interval ci = bootstrap_median_ci(sample, 1);
  CHECK(ci.lower == 4.0);
  CHECK(ci.upper == 4.0);
}

TEST_CASE("bootstrap interval brackets the median and is seeded") {
  Rng rng(3);
  std::vector<double> sample;
  for (int i = 0; i < 101; ++i) sample.push_back(static_cast<double>(rng.below(50)));
  const Interval a = bootstrap_median_ci(sample, 9);
  CHECK(a == bootstrap_median_ci(sample, 9));
  CHECK(a.lower <= median(sample));
  CHECK(a.upper >= median(sample));
  std::vector<double> shuffled = sample;
  rng.shuffle(std::span<double>(shuffled));
  CHECK(bootstrap_median_ci(shuffled, 9) == a);
}

TEST_CASE("difference interval of well separated groups excludes zero") {
  std::vector<double> low, high;
  for (int i = 0; i < 60; ++i) {
    low.push_back(10 + i % 5);
    high.push_back(30 + i % 7);
  }
  const Interval d = bootstrap_median_difference_ci(low, high, 2);
  CHECK(d.upper < 0);
  CHECK(d.lower <= median(low) - median(high));
}

TEST_CASE("stats rows are invariant to episode order") {
  std::vector<EpisodeSummary> eps;
  Rng rng(4);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Condition c : {Condition::Comm, Condition::Mute}) {
      for (int round = 1; round <= 5; ++round) {
        EpisodeSummary s;
        s.maze_seed = seed;
        s.condition = c;
        s.round = round;
        s.turns = static_cast<int>(rng.below(60));
        s.solved = rng.below(10) != 0;
        s.human_messages = static_cast<int>(rng.below(5));
        eps.push_back(s);
      }
    }
  }
  const StatsTable a = build_stats(eps, 77);
  std::reverse(eps.begin(), eps.end());
  const StatsTable b = build_stats(eps, 77);
  REQUIRE(a.rows.size() == 10);
  REQUIRE(a.comparisons.size() == 5);
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].median_turns == b.rows[i].median_turns);
    CHECK(a.rows[i].turns_ci == b.rows[i].turns_ci);
    CHECK(a.rows[i].human_messages == doctest::Approx(b.rows[i].human_messages));
  }
  for (std::size_t i = 0; i < a.comparisons.size(); ++i) {
    CHECK(a.comparisons[i].ci == b.comparisons[i].ci);
    CHECK(a.comparisons[i].paired_ci == b.comparisons[i].paired_ci);
  }
}

TEST_CASE("medians ignore unsolved episodes") {
  std::vector<EpisodeSummary> eps(3);
  eps[0].turns = 10;
  eps[0].solved = true;
  eps[1].turns = 20;
  eps[1].solved = true;
  eps[2].turns = 200;
  eps[2].solved = false;
  const StatsTable t = build_stats(eps, 1);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0].episodes == 3);
  CHECK(t.rows[0].solved == 2);
  CHECK(*t.rows[0].median_turns == 15.0);
}

TEST_CASE("paired comparison uses mazes solved under both conditions") {
  std::vector<EpisodeSummary> eps;
  auto add = [&](std::uint64_t seed, Condition c, int turns, bool solved) {
    EpisodeSummary s;
    s.maze_seed = seed;
    s.condition = c;
    s.turns = turns;
    s.solved = solved;
    eps.push_back(s);
  };
  add(1, Condition::Comm, 10, true);
  add(1, Condition::Mute, 14, true);
  add(2, Condition::Comm, 20, true);
  add(2, Condition::Mute, 21, true);
  add(3, Condition::Comm, 5, true);
  add(3, Condition::Mute, 200, false);
  const StatsTable t = build_stats(eps, 1);
  REQUIRE(t.comparisons.size() == 1);
  CHECK(t.comparisons[0].pairs == 2);
  CHECK(*t.comparisons[0].paired_median_difference == -2.5);
}

TEST_CASE("heatmap of an empty dictionary has no positives") {
  const Layout layout = generate_layout(6);
  const Heatmap map = emit_heatmap(HiddenInfoDict{}, layout.human_side);
  CHECK(map.true_positives() == 0);
  CHECK(map.false_positives() == 0);
  CHECK(map.false_negatives() == 2 * layout.human_side.interior_wall_count());
}

TEST_CASE("heatmap of the true interior walls is exact") {
  const Layout layout = generate_layout(6);
  HiddenInfoDict omega;
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x)
      for (Direction d : kMoveDirections)
        if (layout.human_side.contains(neighbor({x, y}, d)) && layout.human_side.blocked({x, y}, d))
          omega.add({x, y}, d);
  const Heatmap map = emit_heatmap(omega, layout.human_side);
  CHECK(map.false_positives() == 0);
  CHECK(map.false_negatives() == 0);
  CHECK(map.true_positives() == 2 * layout.human_side.interior_wall_count());
  CHECK(render_heatmap(map).find('F') == std::string::npos);
}

TEST_CASE("heatmap counts a rejection of an open edge as a false positive") {
  const MazeSide open = MazeSide::open(3, 3);
  HiddenInfoDict omega;
  omega.add({1, 1}, Direction::Up);
  const Heatmap map = emit_heatmap(omega, open);
  CHECK(map.at({1, 1}).false_positive == 1);
  CHECK(map.false_positives() == 1);
  CHECK(render_heatmap(map).substr(0, 12) == "...\n.F.\n...\n");
}

TEST_CASE("experiment: shape, determinism and results round trip") {
  ExperimentConfig config;
  config.maze_seeds = {5};
  config.master_seed = 42;
  const ExperimentResult a = run_experiment(config);
  const ExperimentResult b = run_experiment(config);
  CHECK(a.stats.rows.size() == 10);
  CHECK(a.episodes.size() == 10);
  REQUIRE(a.episodes.size() == b.episodes.size());
  for (std::size_t i = 0; i < a.episodes.size(); ++i) {
    CHECK(a.episodes[i].turns == b.episodes[i].turns);
    CHECK(a.episodes[i].solved == b.episodes[i].solved);
    CHECK(a.episodes[i].ego_messages == b.episodes[i].ego_messages);
  }
  for (std::size_t i = 0; i < a.mazes.size(); ++i) CHECK(a.mazes[i].omega == b.mazes[i].omega);

  const nlohmann::json j = results_to_json(a);
  CHECK(j["master_seed"] == 42);
  CHECK(j["v"] == kResultsVersion);
  const ExperimentResult back = results_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.episodes.size() == a.episodes.size());
  CHECK(back.mazes[0].layout == a.mazes[0].layout);
  CHECK(back.mazes[0].omega == a.mazes[0].omega);
  for (std::size_t i = 0; i < a.stats.rows.size(); ++i)
    CHECK(back.stats.rows[i].median_turns == a.stats.rows[i].median_turns);
}

TEST_CASE("experiment config validation") {
  ExperimentConfig config;
  CHECK_THROWS_AS(config.validate(), InputError);
  config.maze_seeds = {1};
  config.rounds = 6;
  CHECK_THROWS_AS(config.validate(), InputError);
}

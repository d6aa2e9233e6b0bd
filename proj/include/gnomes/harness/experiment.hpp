#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "gnomes/harness/episode.hpp"
#include "gnomes/harness/stats.hpp"

namespace gnomes {

inline constexpr int kResultsVersion = 1;

struct ExperimentConfig {
  std::vector<Condition> conditions{Condition::Comm, Condition::Mute};
  ProxyConfig proxy;
  std::vector<std::uint64_t> maze_seeds;
  /// Play every seed on this layout instead of generating one per seed.
  std::optional<Layout> layout;
  int rounds = kRoundsPerGame;
  PlannerConfig planner;
  RewardSpec reward;
  int turn_cap = kDefaultTurnCap;
  std::uint64_t master_seed = 0;
  /// Keep full episode logs in the result (large).
  bool keep_logs = false;

  void validate() const;
};

/// One maze played under one condition: every round, plus the ego's
/// hidden-information dictionary after the last round.
struct MazeRecord {
  std::uint64_t maze_seed = 0;
  Condition condition = Condition::Comm;
  Layout layout;
  HiddenInfoDict omega;
  std::vector<EpisodeLog> logs;  // empty unless keep_logs
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<EpisodeSummary> episodes;
  std::vector<MazeRecord> mazes;
  StatsTable stats;
};

/// Runs every (seed, condition, round) episode. Planner memory and the proxy
/// persist across the rounds of one maze and are fresh for each (seed,
/// condition). Deterministic in the config apart from measured durations.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Results file: version, master seed, config echo, episodes, mazes.
nlohmann::json results_to_json(const ExperimentResult& result);
/// Reads back episodes and maze records; stats are recomputed.
ExperimentResult results_from_json(const nlohmann::json& j);

}  // namespace gnomes

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnomes/harness/episode.hpp"

namespace gnomes {

inline constexpr int kBootstrapResamples = 10'000;

/// Median of a non-empty sample; mean of the two middle values for even sizes.
double median(std::vector<double> values);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Percentile bootstrap interval of the median.
Interval bootstrap_median_ci(std::span<const double> sample, std::uint64_t seed,
                             int resamples = kBootstrapResamples, double level = 0.95);
/// Percentile bootstrap interval of median(a) - median(b), resampling each
/// group independently.
Interval bootstrap_median_difference_ci(std::span<const double> a, std::span<const double> b, std::uint64_t seed,
                                        int resamples = kBootstrapResamples, double level = 0.95);

/// Per-episode numbers kept in experiment results.
struct EpisodeSummary {
  std::uint64_t maze_seed = 0;
  Condition condition = Condition::Comm;
  int round = 1;
  int turns = 0;
  bool solved = false;
  double duration_seconds = 0.0;
  int human_messages = 0;
  int ego_messages = 0;
  double human_message_length = 0.0;
  double ego_message_length = 0.0;
};

EpisodeSummary summarize(const EpisodeLog& log, std::uint64_t maze_seed, Condition condition);

struct StatsRow {
  int round = 1;
  Condition condition = Condition::Comm;
  int episodes = 0;
  int solved = 0;
  /// Medians over solved episodes; absent when none solved.
  std::optional<double> median_turns;
  std::optional<Interval> turns_ci;
  std::optional<double> median_duration;
  double human_messages = 0.0;
  double ego_messages = 0.0;
  double human_message_length = 0.0;
  double ego_message_length = 0.0;
};

/// Comm minus mute, per round. Both conditions play the same mazes, so the
/// paired form (median of per-maze differences over mazes solved under both
/// conditions) is reported next to the difference of medians.
struct ComparisonRow {
  int round = 1;
  std::optional<double> median_difference;
  std::optional<Interval> ci;
  int pairs = 0;
  std::optional<double> paired_median_difference;
  std::optional<Interval> paired_ci;
};

struct StatsTable {
  std::uint64_t master_seed = 0;
  std::vector<StatsRow> rows;
  std::vector<ComparisonRow> comparisons;
};

/// Groups by (round, condition). Order of `episodes` does not matter.
StatsTable build_stats(std::span<const EpisodeSummary> episodes, std::uint64_t master_seed);

std::string to_csv(const StatsTable& table);
std::string to_markdown(const StatsTable& table);

void to_json(nlohmann::json& j, const EpisodeSummary& s);
void from_json(const nlohmann::json& j, EpisodeSummary& s);
void to_json(nlohmann::json& j, const StatsTable& t);

}  // namespace gnomes

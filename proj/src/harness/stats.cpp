#include "gnomes/harness/stats.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/core/random.hpp"

namespace gnomes {
namespace {

double median_in_place(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return (lo + hi) / 2.0;
}

double resampled_median(const std::vector<double>& sample, Rng& rng, std::vector<double>& scratch) {
  scratch.resize(sample.size());
  for (double& x : scratch) x = sample[rng.below(sample.size())];
  return median_in_place(scratch);
}

Interval percentile_interval(std::vector<double>& stats, double level) {
  std::sort(stats.begin(), stats.end());
  const double alpha = (1.0 - level) / 2.0;
  const double last = static_cast<double>(stats.size() - 1);
  return {stats[static_cast<std::size_t>(std::floor(alpha * last))],
          stats[static_cast<std::size_t>(std::ceil((1.0 - alpha) * last))]};
}

void check_bootstrap_args(int resamples, double level) {
  if (resamples < 1) throw InputError("bootstrap needs at least one resample");
  if (!(level > 0.0 && level < 1.0)) throw InputError("confidence level must be in (0, 1)");
}

std::vector<double> sorted(std::span<const double> sample) {
  if (sample.empty()) throw InputError("bootstrap of an empty sample");
  std::vector<double> v(sample.begin(), sample.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::string fmt(std::optional<double> v, int precision = 2) {
  if (!v) return "";
  std::ostringstream out;
  out << std::fixed << std::setprecision(precision) << *v;
  return out.str();
}

}  // namespace

double median(std::vector<double> values) {
  if (values.empty()) throw InputError("median of an empty sample");
  return median_in_place(values);
}

Interval bootstrap_median_ci(std::span<const double> sample, std::uint64_t seed, int resamples, double level) {
  check_bootstrap_args(resamples, level);
  // Sorting first makes the result independent of input order.
  const std::vector<double> base = sorted(sample);
  Rng rng(seed);
  std::vector<double> stats(resamples), scratch;
  for (double& s : stats) s = resampled_median(base, rng, scratch);
  return percentile_interval(stats, level);
}

Interval bootstrap_median_difference_ci(std::span<const double> a, std::span<const double> b, std::uint64_t seed,
                                        int resamples, double level) {
  check_bootstrap_args(resamples, level);
  const std::vector<double> sa = sorted(a), sb = sorted(b);
  Rng rng(seed);
  std::vector<double> stats(resamples), scratch;
  for (double& s : stats) {
    const double ma = resampled_median(sa, rng, scratch);
    s = ma - resampled_median(sb, rng, scratch);
  }
  return percentile_interval(stats, level);
}

EpisodeSummary summarize(const EpisodeLog& log, std::uint64_t maze_seed, Condition condition) {
  EpisodeSummary s;
  s.maze_seed = maze_seed;
  s.condition = condition;
  s.round = log.round;
  s.turns = log.turns;
  s.solved = log.solved;
  s.duration_seconds = log.duration_seconds;
  s.human_messages = log.message_count(Player::Human);
  s.ego_messages = log.message_count(Player::Ego);
  s.human_message_length = log.mean_message_length(Player::Human);
  s.ego_message_length = log.mean_message_length(Player::Ego);
  return s;
}

StatsTable build_stats(std::span<const EpisodeSummary> episodes, std::uint64_t master_seed) {
  struct Group {
    std::vector<double> turns, durations;
    std::map<std::uint64_t, int> solved_turns;  // by maze seed
    int episodes = 0;
    double hm = 0, em = 0, hl = 0, el = 0;
  };
  std::map<std::pair<int, int>, Group> groups;
  for (const EpisodeSummary& e : episodes) {
    Group& g = groups[{e.round, static_cast<int>(e.condition)}];
    ++g.episodes;
    g.hm += e.human_messages;
    g.em += e.ego_messages;
    g.hl += e.human_message_length;
    g.el += e.ego_message_length;
    if (e.solved) {
      g.turns.push_back(e.turns);
      g.durations.push_back(e.duration_seconds);
      g.solved_turns[e.maze_seed] = e.turns;
    }
  }

  StatsTable table;
  table.master_seed = master_seed;
  std::map<int, std::map<int, const Group*>> by_round;
  for (const auto& [key, g] : groups) {
    const auto [round, cond] = key;
    by_round[round][cond] = &g;
    StatsRow row;
    row.round = round;
    row.condition = static_cast<Condition>(cond);
    row.episodes = g.episodes;
    row.solved = static_cast<int>(g.turns.size());
    if (!g.turns.empty()) {
      row.median_turns = median(g.turns);
      row.turns_ci = bootstrap_median_ci(g.turns, Rng::derive(master_seed, 1000 + 2 * round + cond));
      row.median_duration = median(g.durations);
    }
    const double n = g.episodes;
    row.human_messages = g.hm / n;
    row.ego_messages = g.em / n;
    row.human_message_length = g.hl / n;
    row.ego_message_length = g.el / n;
    table.rows.push_back(row);
  }

  const int comm = static_cast<int>(Condition::Comm), mute = static_cast<int>(Condition::Mute);
  for (const auto& [round, conds] : by_round) {
    if (!conds.contains(comm) || !conds.contains(mute)) continue;
    ComparisonRow c;
    c.round = round;
    const auto& a = conds.at(comm)->turns;
    const auto& b = conds.at(mute)->turns;
    if (!a.empty() && !b.empty()) {
      c.median_difference = median(a) - median(b);
      c.ci = bootstrap_median_difference_ci(a, b, Rng::derive(master_seed, 5000 + round));
    }
    std::vector<double> diffs;
    const auto& mute_turns = conds.at(mute)->solved_turns;
    for (const auto& [seed, turns] : conds.at(comm)->solved_turns)
      if (const auto it = mute_turns.find(seed); it != mute_turns.end()) diffs.push_back(turns - it->second);
    c.pairs = static_cast<int>(diffs.size());
    if (!diffs.empty()) {
      c.paired_median_difference = median(diffs);
      c.paired_ci = bootstrap_median_ci(diffs, Rng::derive(master_seed, 7000 + round));
    }
    table.comparisons.push_back(c);
  }
  return table;
}

std::string to_csv(const StatsTable& t) {
  std::ostringstream out;
  out << "# master_seed=" << t.master_seed << "\n";
  out << "round,condition,episodes,solved,median_turns,turns_ci_low,turns_ci_high,median_duration_s,"
         "human_messages,ego_messages,human_message_length,ego_message_length\n";
  for (const StatsRow& r : t.rows) {
    out << r.round << ',' << to_string(r.condition) << ',' << r.episodes << ',' << r.solved << ','
        << fmt(r.median_turns, 1) << ',' << fmt(r.turns_ci ? std::optional(r.turns_ci->lower) : std::nullopt, 1)
        << ',' << fmt(r.turns_ci ? std::optional(r.turns_ci->upper) : std::nullopt, 1) << ','
        << fmt(r.median_duration, 4) << ',' << fmt(r.human_messages) << ',' << fmt(r.ego_messages) << ','
        << fmt(r.human_message_length) << ',' << fmt(r.ego_message_length) << '\n';
  }
  return out.str();
}

std::string to_markdown(const StatsTable& t) {
  std::ostringstream out;
  out << "Master seed: " << t.master_seed << "\n\n";
  out << "| round | condition | solved/episodes | median turns | 95% CI | median compute (s) | msgs H | msgs E "
         "| len H | len E |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const StatsRow& r : t.rows) {
    out << "| " << r.round << " | " << to_string(r.condition) << " | " << r.solved << '/' << r.episodes << " | "
        << fmt(r.median_turns, 1) << " | ";
    if (r.turns_ci) out << '[' << fmt(r.turns_ci->lower, 1) << ", " << fmt(r.turns_ci->upper, 1) << ']';
    out << " | " << fmt(r.median_duration, 4) << " | " << fmt(r.human_messages) << " | " << fmt(r.ego_messages)
        << " | " << fmt(r.human_message_length, 1) << " | " << fmt(r.ego_message_length, 1) << " |\n";
  }
  if (!t.comparisons.empty()) {
    out << "\n| round | median turns comm - mute | 95% CI | pairs | paired median difference | 95% CI |\n"
           "|---|---|---|---|---|---|\n";
    for (const ComparisonRow& c : t.comparisons) {
      out << "| " << c.round << " | " << fmt(c.median_difference, 1) << " | ";
      if (c.ci) out << '[' << fmt(c.ci->lower, 1) << ", " << fmt(c.ci->upper, 1) << ']';
      out << " | " << c.pairs << " | " << fmt(c.paired_median_difference, 1) << " | ";
      if (c.paired_ci) out << '[' << fmt(c.paired_ci->lower, 1) << ", " << fmt(c.paired_ci->upper, 1) << ']';
      out << " |\n";
    }
  }
  return out.str();
}

void to_json(nlohmann::json& j, const EpisodeSummary& s) {
  j = {{"maze_seed", s.maze_seed},
       {"condition", to_string(s.condition)},
       {"round", s.round},
       {"turns", s.turns},
       {"solved", s.solved},
       {"duration_seconds", s.duration_seconds},
       {"human_messages", s.human_messages},
       {"ego_messages", s.ego_messages},
       {"human_message_length", s.human_message_length},
       {"ego_message_length", s.ego_message_length}};
}

void from_json(const nlohmann::json& j, EpisodeSummary& s) {
  s.maze_seed = j.at("maze_seed").get<std::uint64_t>();
  const auto cond = parse_condition(j.at("condition").get<std::string>());
  if (!cond) throw InputError("unknown condition " + j.at("condition").dump());
  s.condition = *cond;
  s.round = j.at("round").get<int>();
  s.turns = j.at("turns").get<int>();
  s.solved = j.at("solved").get<bool>();
  s.duration_seconds = j.at("duration_seconds").get<double>();
  s.human_messages = j.value("human_messages", 0);
  s.ego_messages = j.value("ego_messages", 0);
  s.human_message_length = j.value("human_message_length", 0.0);
  s.ego_message_length = j.value("ego_message_length", 0.0);
}

void to_json(nlohmann::json& j, const StatsTable& t) {
  auto opt = [](const auto& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  auto interval = [](const std::optional<Interval>& i) {
    return i ? nlohmann::json::array({i->lower, i->upper}) : nlohmann::json(nullptr);
  };
  j = {{"v", 1}, {"master_seed", t.master_seed}, {"rows", nlohmann::json::array()},
       {"comparisons", nlohmann::json::array()}};
  for (const StatsRow& r : t.rows) {
    j["rows"].push_back({{"round", r.round},
                         {"condition", to_string(r.condition)},
                         {"episodes", r.episodes},
                         {"solved", r.solved},
                         {"median_turns", opt(r.median_turns)},
                         {"turns_ci", interval(r.turns_ci)},
                         {"median_duration_seconds", opt(r.median_duration)},
                         {"human_messages", r.human_messages},
                         {"ego_messages", r.ego_messages},
                         {"human_message_length", r.human_message_length},
                         {"ego_message_length", r.ego_message_length}});
  }
  for (const ComparisonRow& c : t.comparisons)
    j["comparisons"].push_back({{"round", c.round},
                                {"median_difference", opt(c.median_difference)},
                                {"ci", interval(c.ci)},
                                {"pairs", c.pairs},
                                {"paired_median_difference", opt(c.paired_median_difference)},
                                {"paired_ci", interval(c.paired_ci)}});
}

}  // namespace gnomes

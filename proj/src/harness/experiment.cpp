#include "gnomes/harness/experiment.hpp"

#include "gnomes/core/generator.hpp"
#include "gnomes/core/maze_io.hpp"
#include "gnomes/core/maze_side.hpp"
#include "gnomes/planner/tree_dump.hpp"

namespace gnomes {

void ExperimentConfig::validate() const {
  if (maze_seeds.empty()) throw InputError("experiment needs at least one maze seed");
  if (conditions.empty()) throw InputError("experiment needs at least one condition");
  if (rounds < 1 || rounds > kRoundsPerGame) throw InputError("rounds must be in 1..5");
  if (layout && static_cast<int>(layout->rounds.size()) < rounds)
    throw InputError("maze file defines fewer rounds than requested");
  planner.validate();
  reward.validate();
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.validate();
  ExperimentResult result;
  result.config = config;
  LanguageModule language;

  for (const std::uint64_t seed : config.maze_seeds) {
    const Layout layout = config.layout ? *config.layout : generate_layout(seed);
    for (const Condition condition : config.conditions) {
      const std::uint64_t stream = Rng::derive(config.master_seed, seed * 4 + static_cast<std::uint64_t>(condition));
      PlannerMemory memory{{}, Flag::None, Rng::derive(stream, 1), 0, {}};
      ProxyHumanPolicy proxy(config.proxy, layout.human_side, Rng::derive(stream, 2));
      const EpisodeConfig episode{condition, config.planner, config.reward, config.turn_cap};

      MazeRecord record{seed, condition, layout, {}, {}};
      for (int round = 1; round <= config.rounds; ++round) {
        EpisodeLog log = run_episode(layout, round, episode, memory, proxy, language);
        result.episodes.push_back(summarize(log, seed, condition));
        if (config.keep_logs) record.logs.push_back(std::move(log));
      }
      record.omega = memory.omega;
      result.mazes.push_back(std::move(record));
    }
  }
  result.stats = build_stats(result.episodes, config.master_seed);
  return result;
}

nlohmann::json results_to_json(const ExperimentResult& r) {
  const ExperimentConfig& c = r.config;
  nlohmann::json conditions = nlohmann::json::array();
  for (Condition cond : c.conditions) conditions.push_back(to_string(cond));
  nlohmann::json j{
      {"v", kResultsVersion},
      {"master_seed", c.master_seed},
      {"config",
       {{"conditions", conditions},
        {"proxy", to_string(c.proxy.variant)},
        {"error_rate", c.proxy.error_rate},
        {"maze_seeds", c.maze_seeds},
        {"maze_file", c.layout.has_value()},
        {"rounds", c.rounds},
        {"iterations", c.planner.iterations},
        {"exploration", c.planner.exploration},
        {"rollout_cap", c.planner.rollout_cap},
        {"reward", {{"goal", c.reward.goal_reward}, {"step", c.reward.step_penalty}, {"wall", c.reward.wall_penalty}}},
        {"turn_cap", c.turn_cap}}},
      {"episodes", r.episodes},
      {"mazes", nlohmann::json::array()},
      {"stats", r.stats}};
  for (const MazeRecord& m : r.mazes) {
    nlohmann::json rec{{"maze_seed", m.maze_seed},
                       {"condition", to_string(m.condition)},
                       {"maze", to_maze_text(m.layout)},
                       {"omega", omega_to_json(m.omega)}};
    if (!m.logs.empty()) rec["logs"] = m.logs;
    j["mazes"].push_back(std::move(rec));
  }
  return j;
}

ExperimentResult results_from_json(const nlohmann::json& j) {
  if (j.value("v", 0) != kResultsVersion) throw InputError("unsupported results version");
  ExperimentResult r;
  r.config.master_seed = j.at("master_seed").get<std::uint64_t>();
  const auto& cfg = j.at("config");
  r.config.maze_seeds = cfg.at("maze_seeds").get<std::vector<std::uint64_t>>();
  r.config.rounds = cfg.at("rounds").get<int>();
  r.config.turn_cap = cfg.at("turn_cap").get<int>();
  r.config.planner.iterations = cfg.at("iterations").get<int>();
  r.config.conditions.clear();
  for (const auto& c : cfg.at("conditions")) r.config.conditions.push_back(*parse_condition(c.get<std::string>()));
  if (const auto v = parse_proxy_variant(cfg.at("proxy").get<std::string>())) r.config.proxy.variant = *v;
  r.config.proxy.error_rate = cfg.at("error_rate").get<double>();
  r.episodes = j.at("episodes").get<std::vector<EpisodeSummary>>();
  for (const auto& m : j.at("mazes")) {
    const auto cond = parse_condition(m.at("condition").get<std::string>());
    if (!cond) throw InputError("unknown condition in maze record");
    MazeRecord rec{m.at("maze_seed").get<std::uint64_t>(), *cond, parse_maze_text(m.at("maze").get<std::string>()),
                   {}, {}};
    rec.omega = omega_from_json(m.at("omega"));
    if (m.contains("logs")) rec.logs = m.at("logs").get<std::vector<EpisodeLog>>();
    r.mazes.push_back(std::move(rec));
  }
  r.stats = build_stats(r.episodes, r.config.master_seed);
  return r;
}

}  // namespace gnomes

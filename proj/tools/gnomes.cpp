#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "gnomes/core/generator.hpp"
#include "gnomes/core/maze_io.hpp"
#include "gnomes/harness/experiment.hpp"
#include "gnomes/harness/heatmap.hpp"
#include "gnomes/planner/tree_dump.hpp"

#ifdef GNOMES_WITH_SERVER
#include "gnomes/server/app.hpp"
#endif

using namespace gnomes;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return nlohmann::json::parse(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

int simulate(int seeds, std::uint64_t first_seed, const std::string& condition, const std::string& maze_file,
             const std::string& out, std::uint64_t master_seed, const std::string& proxy, double error_rate,
             int iterations, bool keep_logs) {
  ExperimentConfig config;
  config.maze_seeds.resize(seeds);
  std::iota(config.maze_seeds.begin(), config.maze_seeds.end(), first_seed);
  if (condition == "both") {
    config.conditions = {Condition::Comm, Condition::Mute};
  } else {
    config.conditions = {*parse_condition(condition)};
  }
  if (!maze_file.empty()) config.layout = load_maze_file(maze_file);
  config.proxy.variant = *parse_proxy_variant(proxy);
  config.proxy.error_rate = error_rate;
  config.planner.iterations = iterations;
  config.master_seed = master_seed;
  config.keep_logs = keep_logs;

  const ExperimentResult result = run_experiment(config);
  write_text(out, results_to_json(result).dump(1) + "\n");
  std::cerr << to_markdown(result.stats);
  return 0;
}

int stats(const std::string& in, const std::string& format, const std::string& out) {
  const ExperimentResult result = results_from_json(read_json(in));
  if (format == "csv") write_text(out, to_csv(result.stats));
  else if (format == "md") write_text(out, to_markdown(result.stats));
  else write_text(out, nlohmann::json(result.stats).dump(1) + "\n");
  return 0;
}

int heatmap(const std::string& log, const std::string& condition, const std::string& out) {
  const nlohmann::json j = read_json(log);
  std::optional<Heatmap> total;
  auto add = [&](const Layout& layout, const HiddenInfoDict& omega) {
    const Heatmap map = emit_heatmap(omega, layout.human_side);
    if (total) *total += map;
    else total = map;
  };
  if (j.contains("mazes")) {
    const ExperimentResult result = results_from_json(j);
    for (const MazeRecord& m : result.mazes)
      if (condition.empty() || to_string(m.condition) == condition) add(m.layout, m.omega);
  } else {
    add(parse_maze_text(j.at("maze").get<std::string>()), omega_from_json(j.at("omega")));
  }
  if (!total) throw InputError("no maze records matched");
  write_text(out, render_heatmap(*total));
  return 0;
}

int gen_maze(std::uint64_t seed, int width, int height, double density, const std::string& out) {
  GeneratorOptions options;
  options.removal_density = density;
  const Layout layout = generate_layout(seed, width, height, options);
  if (out.empty() || out == "-") std::cout << to_maze_text(layout);
  else save_maze_file(out, layout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gnomes maze game: simulation, statistics and live play server"};
  app.require_subcommand(1);

  auto* sim = app.add_subcommand("simulate", "Self-play episodes against a scripted partner");
  int seeds = 10;
  std::uint64_t first_seed = 1, master_seed = 1;
  std::string condition = "both", maze_file, out = "-", proxy = "greedy-flagging";
  double error_rate = 0.0;
  int iterations = 100;
  bool keep_logs = false;
  sim->add_option("--seeds", seeds, "Number of mazes")->check(CLI::PositiveNumber);
  sim->add_option("--first-seed", first_seed, "First maze seed");
  sim->add_option("--condition", condition, "comm, mute or both")->check(CLI::IsMember({"comm", "mute", "both"}));
  sim->add_option("--maze-file", maze_file, "Play this maze instead of generated ones")->check(CLI::ExistingFile);
  sim->add_option("--out", out, "Results JSON path");
  sim->add_option("--master-seed", master_seed, "Master RNG seed");
  sim->add_option("--proxy", proxy, "Partner policy")
      ->check(CLI::IsMember({"greedy-flagging", "random-compliant", "silent-greedy"}));
  sim->add_option("--error-rate", error_rate, "Partner false-rejection rate")->check(CLI::Range(0.0, 1.0));
  sim->add_option("--iterations", iterations, "Planner iterations per decision")->check(CLI::PositiveNumber);
  sim->add_flag("--logs", keep_logs, "Include full episode logs");

  auto* st = app.add_subcommand("stats", "Summarise a results file");
  std::string stats_in, format = "md", stats_out = "-";
  st->add_option("--in", stats_in, "Results JSON")->required()->check(CLI::ExistingFile);
  st->add_option("--format", format, "csv, md or json")->check(CLI::IsMember({"csv", "md", "json"}));
  st->add_option("--out", stats_out, "Output path");

  auto* hm = app.add_subcommand("heatmap", "Inferred partner walls against the true ones");
  std::string log_in, hm_condition, hm_out = "-";
  hm->add_option("--log", log_in, "Results JSON or single maze record")->required()->check(CLI::ExistingFile);
  hm->add_option("--condition", hm_condition, "Only this condition")->check(CLI::IsMember({"comm", "mute"}));
  hm->add_option("--out", hm_out, "Output path");

  auto* gen = app.add_subcommand("gen-maze", "Write a generated maze file");
  std::uint64_t maze_seed = 1;
  int width = kDefaultMazeSize, height = kDefaultMazeSize;
  double density = GeneratorOptions{}.removal_density;
  std::string gen_out = "-";
  gen->add_option("--seed", maze_seed, "Generator seed");
  gen->add_option("--width", width)->check(CLI::Range(2, 64));
  gen->add_option("--height", height)->check(CLI::Range(2, 64));
  gen->add_option("--density", density, "Extra wall removal probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--out", gen_out, "Output path");

#ifdef GNOMES_WITH_SERVER
  auto* serve = app.add_subcommand("serve", "Run the session server");
  std::string config_file;
  serve->add_option("--config", config_file, "Server config JSON")->check(CLI::ExistingFile);
#endif

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return simulate(seeds, first_seed, condition, maze_file, out, master_seed, proxy, error_rate, iterations,
                              keep_logs);
    if (*st) return stats(stats_in, format, stats_out);
    if (*hm) return heatmap(log_in, hm_condition, hm_out);
    if (*gen) return gen_maze(maze_seed, width, height, density, gen_out);
#ifdef GNOMES_WITH_SERVER
    if (*serve) return run_server(load_server_config(config_file));
#endif
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

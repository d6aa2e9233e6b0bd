#include "gnomes/core/episode_log.hpp"

namespace gnomes {
namespace {

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Moved: return "moved";
    case Outcome::Blocked: return "blocked";
    case Outcome::ReachedGoal: return "reached_goal";
  }
  return "moved";
}

Outcome parse_outcome(const std::string& s) {
  if (s == "blocked") return Outcome::Blocked;
  if (s == "reached_goal") return Outcome::ReachedGoal;
  if (s == "moved") return Outcome::Moved;
  throw InputError("unknown outcome '" + s + "'");
}

template <typename T, typename Parse>
T parse_or_throw(const nlohmann::json& j, Parse parse, const char* what) {
  const auto s = j.get<std::string>();
  auto v = parse(s);
  if (!v) throw InputError(std::string("unknown ") + what + " '" + s + "'");
  return *v;
}

}  // namespace

double EpisodeLog::total_reward() const {
  double sum = 0.0;
  for (const LogEntry& e : entries) sum += e.reward;
  return sum;
}

int EpisodeLog::message_count(Player sender) const {
  int n = 0;
  for (const LogEntry& e : entries)
    if (e.player == sender && !e.message_out.empty()) ++n;
  return n;
}

double EpisodeLog::mean_message_length(Player sender) const {
  std::size_t chars = 0;
  int n = 0;
  for (const LogEntry& e : entries) {
    if (e.player != sender || e.message_out.empty()) continue;
    chars += e.message_out.size();
    ++n;
  }
  return n == 0 ? 0.0 : static_cast<double>(chars) / n;
}

GameState replay(const Layout& layout, const EpisodeLog& log) {
  GameState state = log.initial;
  for (const LogEntry& e : log.entries) {
    if (e.player != state.in_control)
      throw InputError("turn " + std::to_string(e.turn) + ": logged mover is not in control");
    if (!(e.state == state)) throw InputError("turn " + std::to_string(e.turn) + ": logged state drifted");
    const AttemptResult r = attempt(layout.side_of(e.player), state, e.action);
    if (r.outcome != e.outcome || r.state.token != e.post_token)
      throw InputError("turn " + std::to_string(e.turn) + ": replay disagrees with logged outcome");
    state = r.state;
  }
  return state;
}

void to_json(nlohmann::json& j, const Cell& c) { j = nlohmann::json::array({c.x, c.y}); }
void from_json(const nlohmann::json& j, Cell& c) { c = {j.at(0).get<int>(), j.at(1).get<int>()}; }

void to_json(nlohmann::json& j, const GameState& s) {
  j = {{"token", s.token},
       {"in_control", to_string(s.in_control)},
       {"turn", s.turn},
       {"treasure", s.treasure},
       {"treasure_side", to_string(s.treasure_side)},
       {"round", s.round}};
}

void from_json(const nlohmann::json& j, GameState& s) {
  s.token = j.at("token").get<Cell>();
  s.in_control = parse_or_throw<Player>(j.at("in_control"), parse_player, "player");
  s.turn = j.at("turn").get<int>();
  s.treasure = j.at("treasure").get<Cell>();
  s.treasure_side = parse_or_throw<Player>(j.at("treasure_side"), parse_player, "player");
  s.round = j.at("round").get<int>();
}

void to_json(nlohmann::json& j, const LogEntry& e) {
  j = {{"turn", e.turn},
       {"player", to_string(e.player)},
       {"state", e.state},
       {"action", to_string(e.action)},
       {"outcome", outcome_name(e.outcome)},
       {"post_token", e.post_token},
       {"flag_in", to_string(e.flag_in)},
       {"flag_out", to_string(e.flag_out)},
       {"message_in", e.message_in},
       {"message_out", e.message_out},
       {"reward", e.reward}};
}

void from_json(const nlohmann::json& j, LogEntry& e) {
  e.turn = j.at("turn").get<int>();
  e.player = parse_or_throw<Player>(j.at("player"), parse_player, "player");
  e.state = j.at("state").get<GameState>();
  e.action = parse_or_throw<Direction>(j.at("action"), parse_direction, "direction");
  e.outcome = parse_outcome(j.at("outcome").get<std::string>());
  e.post_token = j.at("post_token").get<Cell>();
  e.flag_in = parse_or_throw<Flag>(j.at("flag_in"), parse_flag, "flag");
  e.flag_out = parse_or_throw<Flag>(j.at("flag_out"), parse_flag, "flag");
  e.message_in = j.at("message_in").get<std::string>();
  e.message_out = j.at("message_out").get<std::string>();
  e.reward = j.at("reward").get<double>();
}

void to_json(nlohmann::json& j, const EpisodeLog& log) {
  j = {{"round", log.round},
       {"initial", log.initial},
       {"entries", log.entries},
       {"turns", log.turns},
       {"solved", log.solved},
       {"duration_seconds", log.duration_seconds}};
}

void from_json(const nlohmann::json& j, EpisodeLog& log) {
  log.round = j.at("round").get<int>();
  log.initial = j.at("initial").get<GameState>();
  log.entries = j.at("entries").get<std::vector<LogEntry>>();
  log.turns = j.at("turns").get<int>();
  log.solved = j.at("solved").get<bool>();
  log.duration_seconds = j.at("duration_seconds").get<double>();
}

}  // namespace gnomes

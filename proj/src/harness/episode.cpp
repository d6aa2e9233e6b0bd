#include "gnomes/harness/episode.hpp"

#include <chrono>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/core/oracle.hpp"

namespace gnomes {

std::string_view to_string(Condition c) { return c == Condition::Comm ? "comm" : "mute"; }

std::optional<Condition> parse_condition(std::string_view text) {
  if (text == "comm") return Condition::Comm;
  if (text == "mute") return Condition::Mute;
  return std::nullopt;
}

EpisodeLog run_episode(const Layout& layout, int round, const EpisodeConfig& config, PlannerMemory& memory,
                       ProxyHumanPolicy& proxy, LanguageModule& language) {
  if (round < 1 || round > static_cast<int>(layout.rounds.size()))
    throw InputError("round " + std::to_string(round) + " is not part of the layout");
  if (config.turn_cap < 0) throw InputError("turn cap must be non-negative");
  config.planner.validate();
  config.reward.validate();

  using Clock = std::chrono::steady_clock;
  Clock::duration compute{};

  EpisodeLog log;
  log.round = round;
  log.initial = layout.initial_state(round, Player::Human);
  GameState state = log.initial;
  if (!joint_oracle(layout.ego_side, layout.human_side, state.token, state.treasure, Player::Human))
    throw InputError("round " + std::to_string(round) + " is not jointly solvable");

  const bool comm = config.condition == Condition::Comm;
  const bool ego_sees = state.treasure_side == Player::Ego;
  Planner planner(EgoView{layout.ego_side, ego_sees ? std::optional(state.treasure) : std::nullopt, config.reward},
                  config.planner);
  proxy.begin_round(ego_sees ? std::nullopt : std::optional(state.treasure));
  memory.last_flag = Flag::None;
  memory.last_flag_cell.reset();

  std::string pending_message;  // last message from the player who just moved
  std::optional<Direction> human_proposal;
  int attempts = 0;

  while (!is_final(state) && state.turn < config.turn_cap && attempts < 4 * config.turn_cap + 4) {
    ++attempts;
    LogEntry entry;
    entry.turn = state.turn;
    entry.player = state.in_control;
    entry.state = state;
    entry.message_in = pending_message;

    if (state.in_control == Player::Ego) {
      const auto t0 = Clock::now();
      const Flag f_in = comm ? language.parse_message({pending_message, Player::Human, state.turn}) : Flag::None;
      const Decision d = planner.plan(state, f_in, memory);
      entry.action = d.action;
      entry.flag_in = f_in;
      entry.flag_out = comm ? d.flag : Flag::None;
      if (comm) {
        RenderContext ctx{{state.token, d.action, ego_sees ? std::optional(state.treasure) : std::nullopt},
                          human_proposal, pending_message, state.turn};
        if (auto msg = language.render_flag(d.flag, ctx)) entry.message_out = std::move(msg->text);
      }
      compute += Clock::now() - t0;
    } else {
      const auto t0 = Clock::now();
      const Flag ego_flag = comm ? language.parse_message({pending_message, Player::Ego, state.turn}) : Flag::None;
      compute += Clock::now() - t0;
      const ProxyDecision d = proxy.act(state, ego_flag);
      entry.action = d.action;
      entry.flag_in = ego_flag;
      entry.flag_out = comm ? d.flag : Flag::None;
      if (comm) entry.message_out = proxy_message(d.flag);
      human_proposal = is_action(entry.flag_out) ? as_direction(entry.flag_out) : std::nullopt;
    }

    const AttemptResult r = attempt(layout.side_of(entry.player), state, entry.action);
    entry.outcome = r.outcome;
    entry.post_token = r.state.token;
    entry.reward = reward(config.reward, state, entry.action, r.outcome);
    pending_message = entry.message_out;
    state = r.state;
    log.entries.push_back(std::move(entry));
  }

  log.turns = state.turn - log.initial.turn;
  log.solved = is_final(state);
  log.duration_seconds = std::chrono::duration<double>(compute).count();
  return log;
}

}  // namespace gnomes

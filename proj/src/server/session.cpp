#include "gnomes/server/session.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "gnomes/core/generator.hpp"
#include "gnomes/core/maze_io.hpp"
#include "gnomes/core/oracle.hpp"
#include "gnomes/language/rules.hpp"

namespace gnomes {

std::string_view to_string(SessionCondition c) {
  switch (c) {
    case SessionCondition::VsAgentComm: return "vs-agent-comm";
    case SessionCondition::VsAgentMute: return "vs-agent-mute";
    case SessionCondition::VsHuman: return "vs-human";
  }
  return "?";
}

std::optional<SessionCondition> parse_session_condition(std::string_view text) {
  for (auto c : {SessionCondition::VsAgentComm, SessionCondition::VsAgentMute, SessionCondition::VsHuman})
    if (text == to_string(c)) return c;
  return std::nullopt;
}

std::string random_token() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  std::ostringstream out;
  for (int i = 0; i < 4; ++i) out << std::hex << std::setw(8) << std::setfill('0') << device();
  return out.str();
}

// ---------------------------------------------------------------------------

Session::Session(std::string id, SessionCondition condition, Layout layout, const SessionOptions& options,
                 LanguageModule* language)
    : id_(std::move(id)), condition_(condition), layout_(std::move(layout)), options_(options), language_(language) {
  clients_[Player::Human] = random_token();
  memory_.rng_seed = options.seed;
  if (!options_.log_dir.empty()) {
    std::filesystem::create_directories(options_.log_dir);
    log_path_ = options_.log_dir / (id_ + ".jsonl");
  }
  persist({{"type", "session"},
           {"id", id_},
           {"condition", to_string(condition_)},
           {"seed", options.seed},
           {"maze", to_maze_text(layout_)}});
  start_round(1);
}

Player Session::seat_of(const std::string& client) const {
  std::lock_guard lock(mu_);
  for (const auto& [seat, token] : clients_)
    if (token == client) return seat;
  throw ServerError(403, "unknown-client", "client token is not seated in this session");
}

std::string Session::join() {
  std::lock_guard lock(mu_);
  if (condition_ != SessionCondition::VsHuman) throw ServerError(409, "no-seat", "the agent holds the other seat");
  if (clients_.contains(Player::Ego)) throw ServerError(409, "no-seat", "both seats are taken");
  clients_[Player::Ego] = random_token();
  push_state();
  return clients_[Player::Ego];
}

void Session::persist(const nlohmann::json& line) {
  if (log_path_.empty()) return;
  nlohmann::json j = line;
  j["v"] = kWireVersion;
  std::ofstream out(log_path_, std::ios::app);
  out << j.dump() << '\n';
}

void Session::push_event(std::string kind, nlohmann::json payload, std::optional<Player> audience) {
  WireEvent e;
  e.seq = static_cast<std::int64_t>(events_.size()) + 1;
  e.kind = std::move(kind);
  e.audience = audience;
  e.payload = std::move(payload);
  events_.push_back(std::move(e));
  events_cv_.notify_all();
}

void Session::push_state() {
  push_event("state", nullptr);
  events_.back().state = state_;
}

void Session::start_round(int round) {
  state_ = layout_.initial_state(round, Player::Human);
  EpisodeLog log;
  log.round = round;
  log.initial = state_;
  logs_.push_back(std::move(log));
  memory_.last_flag = Flag::None;
  memory_.last_flag_cell.reset();
  pending_flag_ = Flag::None;
  pending_message_.clear();
  human_proposal_.reset();
  persist({{"type", "round-start"}, {"round", round}, {"initial", state_}});
  push_state();
}

void Session::commit(LogEntry entry, const AttemptResult& r) {
  entry.outcome = r.outcome;
  entry.post_token = r.state.token;
  entry.reward = reward(options_.reward, state_, entry.action, r.outcome);
  score_ += entry.reward;
  persist({{"type", "entry"}, {"round", state_.round}, {"entry", entry}});
  logs_.back().entries.push_back(std::move(entry));
  state_ = r.state;
  logs_.back().turns = state_.turn - logs_.back().initial.turn;

  if (r.outcome == Outcome::Blocked) return;
  push_state();
  if (!is_final(state_)) return;

  logs_.back().solved = true;
  const int round = state_.round;
  const bool last = round >= static_cast<int>(layout_.rounds.size());
  persist({{"type", "round-over"}, {"round", round}, {"solved", true}, {"turns", logs_.back().turns}});
  push_event("round-over", {{"round", round}, {"solved", true}, {"turns", logs_.back().turns}, {"final", last}});
  if (last) {
    finished_ = true;
  } else {
    start_round(round + 1);
  }
}

MoveResult Session::submit_move(const std::string& client, Direction direction) {
  const Player seat = seat_of(client);
  std::lock_guard lock(mu_);
  if (finished_) throw ServerError(409, "finished", "the game is over");
  if (condition_ == SessionCondition::VsHuman && !clients_.contains(Player::Ego))
    throw ServerError(409, "waiting", "waiting for the second player to join");
  if (state_.in_control != seat) throw ServerError(409, "not-your-turn", "it is not your turn");

  LogEntry entry;
  entry.turn = state_.turn;
  entry.player = seat;
  entry.state = state_;
  entry.action = direction;
  if (seat == Player::Human) {
    entry.flag_out = pending_flag_;
    entry.message_out = pending_message_;
  }
  const AttemptResult r = attempt(layout_.side_of(seat), state_, direction);
  commit(std::move(entry), r);
  if (r.outcome == Outcome::Blocked) {
    const std::string text = wall_template(direction);
    push_event("error", {{"code", "wall"}, {"direction", to_string(direction)}, {"message", text},
                         {"penalty", options_.reward.wall_penalty + options_.reward.step_penalty}},
               seat);
    return {false, text};
  }
  return {true, {}};
}

void Session::submit_chat(const std::string& client, const std::string& text) {
  const Player seat = seat_of(client);
  std::unique_lock lock(mu_);
  if (condition_ == SessionCondition::VsAgentMute) throw ServerError(409, "mute", "chat is disabled in this session");
  MessageText msg;
  try {
    msg = ingest_message(text, seat, state_.turn);
  } catch (const InputError& e) {
    throw ServerError(400, "bad-message", e.what());
  }
  if (is_blank(msg.text)) return;
  push_event("chat", {{"from", to_string(seat)}, {"text", msg.text}, {"turn", msg.turn}});
  persist({{"type", "chat"}, {"round", state_.round}, {"turn", msg.turn}, {"from", to_string(seat)}, {"text", msg.text}});
  if (condition_ == SessionCondition::VsHuman) return;

  const Flag f = language_->parse_message(msg);
  if (f == Flag::Inquiry) {
    const bool ego_sees = state_.treasure_side == Player::Ego;
    RenderContext ctx{{state_.token, last_agent_action_, ego_sees ? std::optional(state_.treasure) : std::nullopt},
                      human_proposal_, msg.text, state_.turn};
    if (auto reply = language_->render_flag(Flag::Inquiry, ctx)) {
      push_event("chat", {{"from", "E"}, {"text", reply->text}, {"turn", state_.turn}});
      persist({{"type", "chat"}, {"round", state_.round}, {"turn", state_.turn}, {"from", "E"}, {"text", reply->text}});
    }
    return;
  }
  if (f == Flag::None) return;
  pending_flag_ = f;
  pending_message_ = msg.text;
  human_proposal_ = is_action(f) ? as_direction(f) : std::nullopt;
}

bool Session::agent_turn_due() const {
  std::lock_guard lock(mu_);
  return agent_seat() && !finished_ && state_.in_control == Player::Ego;
}

void Session::announce_thinking() {
  std::lock_guard lock(mu_);
  push_event("flag-proposal", {{"from", "E"}, {"thinking", true}});
}

bool Session::run_agent_turn() {
  std::lock_guard lock(mu_);
  if (!agent_seat() || finished_ || state_.in_control != Player::Ego) return false;
  const bool comm = condition_ == SessionCondition::VsAgentComm;
  const bool ego_sees = state_.treasure_side == Player::Ego;

  Planner planner(EgoView{layout_.ego_side, ego_sees ? std::optional(state_.treasure) : std::nullopt, options_.reward},
                  options_.planner);
  const Flag f_in = comm ? pending_flag_ : Flag::None;
  const Decision d = planner.plan(state_, f_in, memory_);

  LogEntry entry;
  entry.turn = state_.turn;
  entry.player = Player::Ego;
  entry.state = state_;
  entry.action = d.action;
  entry.flag_in = f_in;
  entry.message_in = comm ? pending_message_ : std::string();
  entry.flag_out = comm ? d.flag : Flag::None;
  if (comm) {
    RenderContext ctx{{state_.token, d.action, ego_sees ? std::optional(state_.treasure) : std::nullopt},
                      human_proposal_, pending_message_, state_.turn};
    if (auto msg = language_->render_flag(d.flag, ctx)) entry.message_out = msg->text;
    if (d.flag != Flag::None)
      push_event("flag-proposal", {{"from", "E"}, {"thinking", false}, {"flag", to_string(d.flag)}});
    if (!entry.message_out.empty()) {
      push_event("chat", {{"from", "E"}, {"text", entry.message_out}, {"turn", state_.turn}});
      persist({{"type", "chat"}, {"round", state_.round}, {"turn", state_.turn}, {"from", "E"},
               {"text", entry.message_out}});
    }
  }
  pending_flag_ = Flag::None;
  pending_message_.clear();
  last_agent_action_ = d.action;

  const AttemptResult r = attempt(layout_.ego_side, state_, d.action);
  commit(std::move(entry), r);
  return true;
}

nlohmann::json Session::render(const WireEvent& e, Player seat) const {
  nlohmann::json j{{"v", kWireVersion}, {"seq", e.seq}, {"kind", e.kind}};
  if (e.state) {
    const GameState& s = *e.state;
    const MazeSide& own = layout_.side_of(seat);
    nlohmann::json p{{"round", s.round},
                     {"turn", s.turn},
                     {"token", s.token},
                     {"in_control", to_string(s.in_control)},
                     {"seat", to_string(seat)},
                     {"your_turn", s.in_control == seat},
                     {"width", own.width()},
                     {"height", own.height()},
                     {"walls", own.masks()},
                     {"treasure_visible", s.treasure_side == seat},
                     {"partner", agent_seat() ? "agent" : "human"},
                     {"chat_enabled", condition_ != SessionCondition::VsAgentMute}};
    if (s.treasure_side == seat) p["treasure"] = s.treasure;
    j["payload"] = std::move(p);
  } else {
    j["payload"] = e.payload;
  }
  return j;
}

nlohmann::json Session::events_for(Player seat, std::int64_t after_seq) const {
  std::lock_guard lock(mu_);
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(after_seq, 0)); i < events_.size(); ++i) {
    const WireEvent& e = events_[i];
    if (e.audience && *e.audience != seat) continue;
    out.push_back(render(e, seat));
  }
  return out;
}

bool Session::wait_for_events(std::int64_t after_seq, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(mu_);
  return events_cv_.wait_for(lock, timeout, [&] { return static_cast<std::int64_t>(events_.size()) > after_seq; });
}

nlohmann::json Session::state_for(Player seat) const {
  std::lock_guard lock(mu_);
  WireEvent e;
  e.seq = static_cast<std::int64_t>(events_.size());
  e.kind = "state";
  e.state = state_;
  nlohmann::json j = render(e, seat);
  j["payload"]["finished"] = finished_;
  j["payload"]["condition"] = to_string(condition_);
  j["payload"]["score"] = score_;
  return j;
}

std::int64_t Session::last_seq() const {
  std::lock_guard lock(mu_);
  return static_cast<std::int64_t>(events_.size());
}

GameState Session::state() const {
  std::lock_guard lock(mu_);
  return state_;
}

bool Session::finished() const {
  std::lock_guard lock(mu_);
  return finished_;
}

std::vector<EpisodeLog> Session::logs() const {
  std::lock_guard lock(mu_);
  return logs_;
}

// ---------------------------------------------------------------------------

SessionManager::SessionManager(SessionOptions options, std::optional<LlmClientConfig> llm)
    : options_(std::move(options)) {
  options_.planner.validate();
  options_.reward.validate();
  language_ = llm ? std::make_unique<LanguageModule>(LlmClient(*llm)) : std::make_unique<LanguageModule>();
  worker_ = std::thread([this] { worker_loop(); });
}

SessionManager::~SessionManager() {
  {
    std::lock_guard lock(queue_mu_);
    stop_ = true;
  }
  queue_cv_.notify_all();
  worker_.join();
}

SessionManager::Created SessionManager::create(SessionCondition condition, std::optional<std::uint64_t> seed,
                                               const std::optional<std::string>& maze_text) {
  std::optional<Layout> layout;
  if (maze_text) {
    try {
      layout = parse_maze_text(*maze_text);
    } catch (const std::exception& e) {
      throw ServerError(400, "bad-maze", e.what());
    }
    for (int r = 1; r <= static_cast<int>(layout->rounds.size()); ++r) {
      const GameState s = layout->initial_state(r);
      if (!joint_oracle(layout->ego_side, layout->human_side, s.token, s.treasure, Player::Human))
        throw ServerError(400, "bad-maze", "round " + std::to_string(r) + " is not solvable");
    }
  }
  std::lock_guard lock(mu_);
  SessionOptions options = options_;
  options.seed = seed.value_or(Rng::derive(options_.seed, ++created_));
  if (!layout) layout = generate_layout(options.seed);
  auto session = std::make_shared<Session>(random_token(), condition, std::move(*layout), options, language_.get());
  sessions_[session->id()] = session;
  return {session, session->creator_token()};
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServerError(404, "no-session", "no such session");
  return it->second;
}

MoveResult SessionManager::submit_move(const std::string& id, const std::string& client, Direction direction) {
  auto s = find(id);
  const MoveResult r = s->submit_move(client, direction);
  if (s->agent_turn_due()) {
    s->announce_thinking();
    schedule(s);
  }
  return r;
}

void SessionManager::submit_chat(const std::string& id, const std::string& client, const std::string& text) {
  find(id)->submit_chat(client, text);
}

void SessionManager::schedule(const std::shared_ptr<Session>& s) {
  {
    std::lock_guard lock(queue_mu_);
    queue_.push_back(s);
  }
  queue_cv_.notify_one();
}

void SessionManager::worker_loop() {
  std::unique_lock lock(queue_mu_);
  while (true) {
    queue_cv_.wait(lock, [&] { return stop_ || !queue_.empty(); });
    if (queue_.empty() && stop_) return;
    auto s = std::move(queue_.front());
    queue_.pop_front();
    busy_ = true;
    lock.unlock();
    try {
      s->run_agent_turn();
    } catch (const std::exception& e) {
      std::clog << "session " << s->id() << ": agent turn failed: " << e.what() << '\n';
    }
    lock.lock();
    busy_ = false;
    idle_cv_.notify_all();
  }
}

void SessionManager::wait_idle() {
  std::unique_lock lock(queue_mu_);
  idle_cv_.wait(lock, [&] { return queue_.empty() && !busy_; });
}

// ---------------------------------------------------------------------------

SessionRecord load_session_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::optional<SessionRecord> record;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw InputError(path.string() + ":" + std::to_string(number) + ": not JSON");
    const std::string type = j.value("type", "");
    if (type == "session") {
      const auto cond = parse_session_condition(j.at("condition").get<std::string>());
      if (!cond) throw InputError("unknown condition in " + path.string());
      record.emplace(SessionRecord{j.at("id").get<std::string>(), *cond,
                                   parse_maze_text(j.at("maze").get<std::string>()), {}});
      continue;
    }
    if (!record) throw InputError(path.string() + ": session header missing");
    if (type == "round-start") {
      EpisodeLog log;
      log.round = j.at("round").get<int>();
      log.initial = j.at("initial").get<GameState>();
      record->logs.push_back(std::move(log));
    } else if (type == "entry") {
      if (record->logs.empty()) throw InputError(path.string() + ": entry before round start");
      EpisodeLog& log = record->logs.back();
      log.entries.push_back(j.at("entry").get<LogEntry>());
      const LogEntry& e = log.entries.back();
      log.turns = e.state.turn + (e.outcome == Outcome::Blocked ? 0 : 1) - log.initial.turn;
    } else if (type == "round-over") {
      if (!record->logs.empty()) record->logs.back().solved = j.value("solved", false);
    }
  }
  if (!record) throw InputError(path.string() + ": empty session log");
  return std::move(*record);
}

}  // namespace gnomes

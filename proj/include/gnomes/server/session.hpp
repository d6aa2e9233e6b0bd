#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gnomes/core/episode_log.hpp"
#include "gnomes/language/language_module.hpp"
#include "gnomes/planner/aismcts.hpp"

namespace gnomes {

inline constexpr int kWireVersion = 1;

enum class SessionCondition { VsAgentComm, VsAgentMute, VsHuman };

std::string_view to_string(SessionCondition c);
std::optional<SessionCondition> parse_session_condition(std::string_view text);

/// Request-level failure with the HTTP status it maps to.
class ServerError : public std::runtime_error {
 public:
  ServerError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

/// Stored event. State events keep the game state and are rendered per seat
/// on delivery; the others carry a ready payload. `audience` limits delivery
/// to one seat.
struct WireEvent {
  std::int64_t seq = 0;
  std::string kind;  // state | chat | flag-proposal | round-over | error
  std::optional<Player> audience;
  nlohmann::json payload;
  std::optional<GameState> state;
};

struct MoveResult {
  bool applied = false;
  /// Wall template text when the move was blocked.
  std::string message;
};

struct SessionOptions {
  PlannerConfig planner;
  RewardSpec reward;
  std::uint64_t seed = 0;
  /// Directory for JSON-lines logs; empty disables persistence.
  std::filesystem::path log_dir;
};

/// One game between a human seat (H) and either the agent or a second human
/// (E). All mutations hold the session mutex.
class Session {
 public:
  Session(std::string id, SessionCondition condition, Layout layout, const SessionOptions& options,
          LanguageModule* language);

  const std::string& id() const { return id_; }
  SessionCondition condition() const { return condition_; }
  bool agent_seat() const { return condition_ != SessionCondition::VsHuman; }

  /// Seat for a client token; throws ServerError 403 for unknown tokens.
  Player seat_of(const std::string& client) const;
  std::string creator_token() const { return clients_.at(Player::Human); }
  /// vs-human only; the second client takes the E seat.
  std::string join();

  MoveResult submit_move(const std::string& client, Direction direction);
  void submit_chat(const std::string& client, const std::string& text);
  /// Plays the agent's turn if it is due. Returns true if a move was made.
  bool run_agent_turn();
  bool agent_turn_due() const;
  /// Tells the human seat the agent is deciding; sent when the turn is queued.
  void announce_thinking();

  /// Events after `after_seq` visible to `seat`, rendered to wire JSON.
  nlohmann::json events_for(Player seat, std::int64_t after_seq) const;
  /// Blocks until an event newer than `after_seq` exists or the timeout hits.
  bool wait_for_events(std::int64_t after_seq, std::chrono::milliseconds timeout) const;
  nlohmann::json state_for(Player seat) const;

  std::int64_t last_seq() const;
  GameState state() const;
  bool finished() const;
  const Layout& layout() const { return layout_; }
  std::filesystem::path log_path() const { return log_path_; }
  /// Episode logs of finished rounds plus the current one.
  std::vector<EpisodeLog> logs() const;

 private:
  void push_event(std::string kind, nlohmann::json payload, std::optional<Player> audience = std::nullopt);
  void push_state();
  void persist(const nlohmann::json& line);
  /// Records the entry and handles round completion.
  void commit(LogEntry entry, const AttemptResult& r);
  void start_round(int round);
  nlohmann::json render(const WireEvent& e, Player seat) const;

  std::string id_;
  SessionCondition condition_;
  Layout layout_;
  SessionOptions options_;
  LanguageModule* language_;

  mutable std::mutex mu_;
  mutable std::condition_variable events_cv_;
  std::map<Player, std::string> clients_;
  GameState state_;
  bool finished_ = false;
  PlannerMemory memory_;
  std::vector<EpisodeLog> logs_;
  std::vector<WireEvent> events_;
  std::filesystem::path log_path_;

  // Latest human input for the agent's next decision.
  Flag pending_flag_ = Flag::None;
  std::string pending_message_;
  std::optional<Direction> human_proposal_;
  Direction last_agent_action_ = Direction::Noop;
  double score_ = 0.0;
};

/// Owns sessions and the worker that plays agent turns off the request path.
class SessionManager {
 public:
  SessionManager(SessionOptions options, std::optional<LlmClientConfig> llm = std::nullopt);
  ~SessionManager();
  SessionManager(const SessionManager&) = delete;
  SessionManager& operator=(const SessionManager&) = delete;

  struct Created {
    std::shared_ptr<Session> session;
    std::string client;
  };
  /// Uses `maze_text` when given, else a layout generated from `seed`.
  Created create(SessionCondition condition, std::optional<std::uint64_t> seed,
                 const std::optional<std::string>& maze_text);
  std::shared_ptr<Session> find(const std::string& id) const;

  MoveResult submit_move(const std::string& id, const std::string& client, Direction direction);
  void submit_chat(const std::string& id, const std::string& client, const std::string& text);

  /// Waits until no agent turn is queued or running.
  void wait_idle();

 private:
  void schedule(const std::shared_ptr<Session>& s);
  void worker_loop();

  SessionOptions options_;
  std::unique_ptr<LanguageModule> language_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t created_ = 0;

  std::mutex queue_mu_;
  std::condition_variable queue_cv_, idle_cv_;
  std::deque<std::shared_ptr<Session>> queue_;
  bool busy_ = false;
  bool stop_ = false;
  std::thread worker_;
};

/// Everything a persisted session file holds.
struct SessionRecord {
  std::string id;
  SessionCondition condition = SessionCondition::VsAgentComm;
  Layout layout;
  std::vector<EpisodeLog> logs;
};

SessionRecord load_session_log(const std::filesystem::path& path);

std::string random_token();

}  // namespace gnomes

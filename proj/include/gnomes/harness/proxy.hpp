#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gnomes/core/game.hpp"
#include "gnomes/core/random.hpp"
#include "gnomes/planner/flag.hpp"
#include "gnomes/planner/hidden_info.hpp"

namespace gnomes {

enum class ProxyVariant { GreedyFlagging, RandomCompliant, SilentGreedy };

std::string_view to_string(ProxyVariant v);
std::optional<ProxyVariant> parse_proxy_variant(std::string_view text);

struct ProxyConfig {
  ProxyVariant variant = ProxyVariant::GreedyFlagging;
  /// Probability of rejecting an ego proposal that is actually valid.
  double error_rate = 0.0;
};

struct ProxyDecision {
  Direction action = Direction::Noop;
  Flag flag = Flag::None;
  friend bool operator==(const ProxyDecision&, const ProxyDecision&) = default;
};

/// Scripted stand-in for the human player. Sees only its own side, and the
/// treasure only in rounds where it is visible to the human.
///
/// The talking variants answer an ego move proposal with Reject exactly when
/// the move is blocked on their side (or, with error_rate, by mistake), and
/// still take their own move that turn.
class ProxyHumanPolicy {
 public:
  ProxyHumanPolicy(ProxyConfig config, MazeSide own_side, std::uint64_t seed);

  /// Resets per-round state. `treasure` must be empty unless visible to the human.
  void begin_round(std::optional<Cell> treasure);

  /// Decides the human's turn given the ego's most recent flag.
  ProxyDecision act(const GameState& state, Flag ego_flag);

  const ProxyConfig& config() const { return config_; }
  /// Requests the ego has turned down, keyed by the cell they were made for.
  const HiddenInfoDict& ego_refusals() const { return ego_refusals_; }
  int rejections_sent() const { return rejections_sent_; }
  int false_rejections_sent() const { return false_rejections_; }

 private:
  Direction explore(Cell at);
  /// Next own-side shortest-path step from `at` the ego has not refused there.
  std::optional<Direction> request_from(Cell at);
  Direction pick(DirectionSet options);

  ProxyConfig config_;
  MazeSide side_;
  Rng rng_;
  std::optional<Cell> treasure_;
  std::vector<int> distances_;
  std::map<Cell, int> visits_;
  HiddenInfoDict ego_refusals_;
  std::optional<std::pair<Cell, Direction>> last_request_;
  int rejections_sent_ = 0;
  int false_rejections_ = 0;
};

/// Human-like phrasing of a proxy flag; empty for None.
std::string proxy_message(Flag flag);

}  // namespace gnomes

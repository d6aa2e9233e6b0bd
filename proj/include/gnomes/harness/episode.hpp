#pragma once

#include <optional>
#include <string_view>

#include "gnomes/core/episode_log.hpp"
#include "gnomes/harness/proxy.hpp"
#include "gnomes/language/language_module.hpp"
#include "gnomes/planner/aismcts.hpp"

namespace gnomes {

/// A-Comm exchanges messages both ways; A-Mute sends and reads nothing.
enum class Condition { Comm, Mute };

std::string_view to_string(Condition c);
std::optional<Condition> parse_condition(std::string_view text);

inline constexpr int kDefaultTurnCap = 200;

struct EpisodeConfig {
  Condition condition = Condition::Comm;
  PlannerConfig planner;
  RewardSpec reward;
  int turn_cap = kDefaultTurnCap;
};

/// Plays one round, human first, until the treasure is reached or `turn_cap`
/// turns have been applied. `memory` carries the ego's hidden-information
/// dictionary between rounds of the same maze. Throws InputError when the
/// round is not jointly solvable.
EpisodeLog run_episode(const Layout& layout, int round, const EpisodeConfig& config, PlannerMemory& memory,
                       ProxyHumanPolicy& proxy, LanguageModule& language);

}  // namespace gnomes

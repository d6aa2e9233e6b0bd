#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "gnomes/language/message.hpp"
#include "gnomes/planner/flag.hpp"

namespace gnomes {

/// Keyword classifier used whenever no language model is configured, and as
/// the fallback when one fails. Priority: first non-negated move word, then
/// questions (Inquiry), affirmations (Accept), refusals (Reject), else None.
Flag classify_with_rules(std::string_view text);

/// "Can you {action}?"
std::string request_template(Direction action);
/// "I cannot {action} because there is a wall in that direction."
std::string wall_template(std::optional<Direction> proposal);

/// Answer to an inquiry built only from the snapshot; at most 30 words.
std::string fallback_inquiry_answer(const GameInfoSnapshot& info);

/// Maps a free-form model reply onto a flag: exact label match after
/// normalisation, else a unique label among the reply's words.
std::optional<Flag> map_reply(std::string_view reply);

}  // namespace gnomes

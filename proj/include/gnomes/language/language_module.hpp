#pragma once

#include <atomic>
#include <optional>
#include <string>

#include "gnomes/language/llm_client.hpp"
#include "gnomes/language/message.hpp"
#include "gnomes/planner/flag.hpp"

namespace gnomes {

struct RenderContext {
  GameInfoSnapshot info;
  /// Partner's most recent action proposal, named in the wall explanation.
  std::optional<Direction> partner_proposal;
  /// Text of the partner's inquiry when answering one.
  std::string inquiry;
  int turn = 0;
};

/// Message <-> flag translation. Without an LLM client every call takes the
/// deterministic rule path.
class LanguageModule {
 public:
  LanguageModule() = default;
  explicit LanguageModule(std::optional<LlmClient> llm) : llm_(std::move(llm)) {}

  /// Total: never throws, always returns some flag.
  Flag parse_message(const MessageText& msg);
  std::optional<MessageText> render_flag(Flag f_out, const RenderContext& ctx);

  bool llm_enabled() const { return llm_.has_value(); }
  /// Number of LLM calls that degraded to the rule path.
  int llm_failures() const { return failures_.load(); }

 private:
  std::optional<LlmClient> llm_;
  std::atomic<int> failures_{0};
};

bool is_blank(std::string_view text);

}  // namespace gnomes

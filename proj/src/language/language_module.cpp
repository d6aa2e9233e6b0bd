#include "gnomes/language/language_module.hpp"

#include <cctype>
#include <iostream>

#include "gnomes/language/rules.hpp"

namespace gnomes {

bool is_blank(std::string_view text) {
  for (unsigned char ch : text)
    if (!std::isspace(ch)) return false;
  return true;
}

Flag LanguageModule::parse_message(const MessageText& msg) {
  if (is_blank(msg.text)) return Flag::None;
  if (llm_) {
    try {
      if (const auto f = map_reply(llm_->classify(msg.text))) return *f;
      ++failures_;
      std::clog << "language: unmappable classifier reply, using rules\n";
    } catch (const std::exception& e) {
      ++failures_;
      std::clog << "language: classifier unavailable (" << e.what() << "), using rules\n";
    }
  }
  return classify_with_rules(msg.text);
}

std::optional<MessageText> LanguageModule::render_flag(Flag f_out, const RenderContext& ctx) {
  std::string text;
  if (is_action(f_out)) {
    text = request_template(*as_direction(f_out));
  } else if (f_out == Flag::Reject) {
    text = wall_template(ctx.partner_proposal);
  } else if (f_out == Flag::Inquiry) {
    if (llm_) {
      try {
        text = llm_->answer(ctx.inquiry, ctx.info);
      } catch (const std::exception& e) {
        ++failures_;
        std::clog << "language: answer generation unavailable (" << e.what() << "), using fallback\n";
      }
    }
    if (is_blank(text)) text = fallback_inquiry_answer(ctx.info);
    // Keep model output within the ingestion limit.
    if (text.size() > kMaxMessageLength) {
      std::size_t cut = kMaxMessageLength;
      while (cut > 0 && (static_cast<unsigned char>(text[cut]) & 0xC0) == 0x80) --cut;
      text.resize(cut);
    }
  } else {
    return std::nullopt;
  }
  return MessageText{std::move(text), Player::Ego, ctx.turn};
}

}  // namespace gnomes

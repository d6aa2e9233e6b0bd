#include "gnomes/language/rules.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <sstream>
#include <vector>

#include "gnomes/core/maze_side.hpp"

namespace gnomes {
namespace {

using Clause = std::vector<std::string>;

std::string normalize(std::string_view text) {
  std::string out(text);
  for (std::size_t pos; (pos = out.find("\xE2\x80\x99")) != std::string::npos;) out.replace(pos, 3, "'");
  for (std::size_t pos; (pos = out.find("no-op")) != std::string::npos;) out.replace(pos, 5, "noop");
  return out;
}

/// Lower-cases, drops apostrophes ("can't" -> "cant") and splits into clauses
/// at sentence/comma punctuation.
std::vector<Clause> tokenize(std::string_view raw) {
  const std::string text = normalize(raw);
  std::vector<Clause> clauses(1);
  std::string word;
  auto flush = [&] {
    if (!word.empty()) clauses.back().push_back(std::move(word));
    word.clear();
  };
  for (char c : text) {
    const unsigned char ch = static_cast<unsigned char>(c);
    if (ch < 0x80 && std::isalnum(ch)) {
      word.push_back(static_cast<char>(std::tolower(ch)));
    } else if (ch == '\'') {
      continue;
    } else {
      flush();
      if ((ch == ',' || ch == '.' || ch == ';' || ch == '!' || ch == '?' || ch == ':') && !clauses.back().empty())
        clauses.emplace_back();
    }
  }
  flush();
  if (clauses.back().empty() && clauses.size() > 1) clauses.pop_back();
  return clauses;
}

bool one_of(const std::string& w, std::initializer_list<std::string_view> words) {
  return std::find(words.begin(), words.end(), w) != words.end();
}

std::optional<Direction> move_word(const std::string& w) {
  if (one_of(w, {"right", "rightward", "rightwards", "east"})) return Direction::Right;
  if (one_of(w, {"left", "leftward", "leftwards", "west"})) return Direction::Left;
  if (one_of(w, {"up", "upward", "upwards", "north"})) return Direction::Up;
  if (one_of(w, {"down", "downward", "downwards", "south"})) return Direction::Down;
  if (one_of(w, {"noop", "stay", "wait", "pass", "remain"})) return Direction::Noop;
  return std::nullopt;
}

bool is_negator(const std::string& w) {
  return one_of(w, {"not", "dont", "cant", "cannot", "never", "no", "wont", "shouldnt", "couldnt", "unable",
                    "isnt", "doesnt", "nor"});
}

bool is_interrogative(const std::string& w) {
  return one_of(w, {"where", "what", "which", "how", "why", "when", "who", "can", "could", "do", "does", "is",
                    "are", "should", "would", "will", "any", "anything"});
}

bool is_affirmation(const std::string& w) {
  return one_of(w, {"ok", "okay", "k", "yes", "yeah", "yep", "yup", "sure", "alright", "agreed", "agree", "fine",
                    "roger", "done", "gotcha", "understood", "great", "perfect", "cool"});
}

bool is_refusal(const std::string& w) {
  return one_of(w, {"no", "nope", "cannot", "cant", "unable", "wall", "walls", "blocked", "impossible", "wont",
                    "nah", "sorry"});
}

constexpr std::size_t kNegationWindow = 3;

}  // namespace

Flag classify_with_rules(std::string_view text) {
  const std::vector<Clause> clauses = tokenize(text);

  for (const Clause& clause : clauses) {
    for (std::size_t i = 0; i < clause.size(); ++i) {
      // "don't move" / "do not move" / "stop"
      if (clause[i] == "stop") return Flag::Noop;
      if (clause[i] == "move" && i > 0 && is_negator(clause[i - 1]) && clause[i - 1] != "cant" &&
          clause[i - 1] != "cannot")
        return Flag::Noop;

      const auto dir = move_word(clause[i]);
      if (!dir) continue;
      bool negated = false;
      for (std::size_t k = i >= kNegationWindow ? i - kNegationWindow : 0; k < i; ++k)
        negated = negated || is_negator(clause[k]);
      if (!negated) return to_flag(*dir);
    }
  }

  const bool question = text.find('?') != std::string_view::npos;
  bool asks = false;
  bool affirms = false;
  bool refuses = false;
  for (const Clause& clause : clauses) {
    for (std::size_t i = 0; i < clause.size(); ++i) {
      const std::string& w = clause[i];
      asks = asks || (question && is_interrogative(w)) ||
             (i == 0 && one_of(w, {"where", "what", "which", "how", "why"}));
      affirms = affirms || is_affirmation(w);
      refuses = refuses || is_refusal(w);
    }
    if (clause.size() >= 2 && clause[0] == "sounds" && one_of(clause[1], {"good", "great", "fine"}))
      affirms = true;
    if (clause.size() >= 2 && clause[0] == "got" && clause[1] == "it") affirms = true;
  }
  if (asks) return Flag::Inquiry;
  if (affirms) return Flag::Accept;
  if (refuses) return Flag::Reject;
  return Flag::None;
}

std::string request_template(Direction action) { return "Can you " + std::string(to_string(action)) + "?"; }

std::string wall_template(std::optional<Direction> proposal) {
  const std::string what = proposal ? std::string(to_string(*proposal)) : std::string("do that");
  return "I cannot " + what + " because there is a wall in that direction.";
}

std::string fallback_inquiry_answer(const GameInfoSnapshot& info) {
  std::ostringstream out;
  out << "I am at " << to_string(info.token);
  if (info.action == Direction::Noop) {
    out << " and will stay put. ";
  } else {
    out << " and will move " << to_string(info.action) << ". ";
  }
  if (!info.treasure) {
    out << "I cannot see the treasure, so tell me which way to go. Watch for walls.";
    return out.str();
  }
  const Cell t = *info.treasure;
  const int dx = t.x - info.token.x;
  const int dy = t.y - info.token.y;
  std::string where;
  if (dy < 0) where = "up";
  if (dy > 0) where = "down";
  if (dx != 0) {
    if (!where.empty()) where += " and ";
    where += dx > 0 ? "to the right" : "to the left";
  }
  out << "The treasure is at " << to_string(t);
  if (!where.empty()) out << ", " << where << " from here";
  out << ". Walls may block the direct way.";
  return out.str();
}

std::optional<Flag> map_reply(std::string_view reply) {
  std::string cleaned;
  for (char ch : reply) {
    const unsigned char u = static_cast<unsigned char>(ch);
    if (std::isalnum(u))
      cleaned.push_back(static_cast<char>(std::tolower(u)));
    else
      cleaned.push_back(' ');
  }
  std::istringstream in(cleaned);
  std::vector<std::string> words;
  for (std::string w; in >> w;) words.push_back(w);

  if (words.size() == 1)
    if (auto f = parse_flag(words[0])) return f;
  if (words.size() == 2 && words[0] == "flag")
    if (auto f = parse_flag(words[1])) return f;

  std::optional<Flag> found;
  for (const std::string& w : words) {
    const auto f = parse_flag(w);
    if (!f) continue;
    if (found && *found != *f) return std::nullopt;
    found = f;
  }
  return found;
}

MessageText ingest_message(std::string text, Player sender, int turn) {
  std::size_t code_points = 0;
  for (unsigned char ch : text)
    if ((ch & 0xC0) != 0x80) ++code_points;
  if (code_points > kMaxMessageLength)
    throw InputError("message exceeds " + std::to_string(kMaxMessageLength) + " characters");
  return {std::move(text), sender, turn};
}

}  // namespace gnomes

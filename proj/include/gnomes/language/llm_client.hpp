#pragma once

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gnomes/language/message.hpp"

namespace gnomes {

/// Connection settings for an OpenAI-compatible chat endpoint. The key itself
/// is never stored; only the name of the environment variable holding it.
struct LlmClientConfig {
  std::string endpoint = "https://api.openai.com/v1";
  std::string model = "gpt-3.5-turbo";
  std::string api_key_env = "OPENAI_API_KEY";
  double timeout_seconds = 10.0;
  int max_retries = 1;

  void validate() const;
  static LlmClientConfig from_json(const nlohmann::json& j);
};

struct ChatMessage {
  std::string role;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

/// Network, timeout, quota or malformed-response failure.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  /// One chat completion round-trip; returns the first choice's content.
  virtual std::string complete(const LlmClientConfig& config, const std::vector<ChatMessage>& messages) = 0;
};

class HttpChatTransport : public ChatTransport {
 public:
  std::string complete(const LlmClientConfig& config, const std::vector<ChatMessage>& messages) override;
};

nlohmann::json chat_request_body(const LlmClientConfig& config, const std::vector<ChatMessage>& messages);
/// Throws TransportError when the body has no choices[0].message.content.
std::string chat_reply_content(const nlohmann::json& body);

struct FewShotExample {
  std::string message;
  std::string label;
};

/// The six message/flag pairs used as few-shot examples.
const std::vector<FewShotExample>& default_examples();

std::vector<ChatMessage> classification_prompt(std::string_view text, const std::vector<FewShotExample>& examples);
std::vector<ChatMessage> answer_prompt(std::string_view inquiry, const GameInfoSnapshot& info);

class LlmClient {
 public:
  explicit LlmClient(LlmClientConfig config, std::shared_ptr<ChatTransport> transport = nullptr);

  /// Raw model reply; throws TransportError once retries are exhausted.
  std::string classify(std::string_view text, const std::vector<FewShotExample>& examples = default_examples());
  std::string answer(std::string_view inquiry, const GameInfoSnapshot& info);

  const LlmClientConfig& config() const { return config_; }

 private:
  std::string round_trip(const std::vector<ChatMessage>& messages);

  LlmClientConfig config_;
  std::shared_ptr<ChatTransport> transport_;
};

}  // namespace gnomes

#include "gnomes/language/llm_client.hpp"

#include <cstdlib>

#include <httplib.h>

#include "gnomes/core/maze_side.hpp"
#include "gnomes/language/prompts.hpp"

namespace gnomes {
namespace {

std::string replace_all(std::string text, std::string_view key, std::string_view value) {
  for (std::size_t pos = 0; (pos = text.find(key, pos)) != std::string::npos; pos += value.size())
    text.replace(pos, key.size(), value);
  return text;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;    // no trailing slash
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme = url.find("://");
  if (scheme == std::string::npos) throw InputError("endpoint must be an absolute http(s) URL: " + url);
  const auto slash = url.find('/', scheme + 3);
  Endpoint e;
  e.origin = url.substr(0, slash);
  e.path = slash == std::string::npos ? "" : url.substr(slash);
  while (!e.path.empty() && e.path.back() == '/') e.path.pop_back();
  return e;
}

}  // namespace

void LlmClientConfig::validate() const {
  if (!(timeout_seconds > 0.0)) throw InputError("llm timeout must be positive");
  if (max_retries < 0) throw InputError("llm max_retries must be non-negative");
  if (model.empty()) throw InputError("llm model name is empty");
  const std::string scheme = endpoint.substr(0, endpoint.find("://"));
  if (scheme != "http" && scheme != "https") throw InputError("llm endpoint must use http or https: " + endpoint);
}

LlmClientConfig LlmClientConfig::from_json(const nlohmann::json& j) {
  LlmClientConfig c;
  c.endpoint = j.value("endpoint", c.endpoint);
  c.model = j.value("model", c.model);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.timeout_seconds = j.value("timeout_seconds", c.timeout_seconds);
  c.max_retries = j.value("max_retries", c.max_retries);
  c.validate();
  return c;
}

nlohmann::json chat_request_body(const LlmClientConfig& config, const std::vector<ChatMessage>& messages) {
  nlohmann::json body{{"model", config.model}, {"temperature", 0}, {"messages", nlohmann::json::array()}};
  for (const ChatMessage& m : messages) body["messages"].push_back({{"role", m.role}, {"content", m.content}});
  return body;
}

std::string chat_reply_content(const nlohmann::json& body) {
  const auto choices = body.find("choices");
  if (choices == body.end() || !choices->is_array() || choices->empty())
    throw TransportError("chat reply has no choices");
  const auto& message = (*choices)[0].value("message", nlohmann::json::object());
  const auto content = message.find("content");
  if (content == message.end() || !content->is_string()) throw TransportError("chat reply has no message content");
  return content->get<std::string>();
}

std::string HttpChatTransport::complete(const LlmClientConfig& config, const std::vector<ChatMessage>& messages) {
  const Endpoint e = split_endpoint(config.endpoint);
  httplib::Client client(e.origin);
  const auto timeout = std::chrono::duration<double>(config.timeout_seconds);
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
  client.set_connection_timeout(usec / 1'000'000, usec % 1'000'000);
  client.set_read_timeout(usec / 1'000'000, usec % 1'000'000);
  client.set_write_timeout(usec / 1'000'000, usec % 1'000'000);

  httplib::Headers headers;
  if (const char* key = std::getenv(config.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);

  const auto res = client.Post(e.path + "/chat/completions", headers, chat_request_body(config, messages).dump(),
                               "application/json");
  if (!res) throw TransportError("chat request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status));
  const auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded()) throw TransportError("chat reply is not JSON");
  return chat_reply_content(body);
}

const std::vector<FewShotExample>& default_examples() {
  static const std::vector<FewShotExample> examples{
      {"Right and then down. First move should be right.", "right"},
      {"Can you move left by one step?", "left"},
      {"Can you stay put?", "noop"},
      {"Ok.", "Accept"},
      {"I cannot, there is a wall in that direction.", "Reject"},
      {"Where exactly is the hidden treasure located?", "Inquiry"},
  };
  return examples;
}

std::vector<ChatMessage> classification_prompt(std::string_view text, const std::vector<FewShotExample>& examples) {
  std::string shots;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    shots += "(" + std::to_string(i + 1) + ") Message: \"" + examples[i].message + "\" Flag: " + examples[i].label +
             "\n";
  }
  std::string user = replace_all(std::string(prompts::kParseUser), "{examples}", shots);
  user = replace_all(std::move(user), "{message}", text);
  return {{"system", std::string(prompts::kParseSystem)}, {"user", std::move(user)}};
}

std::vector<ChatMessage> answer_prompt(std::string_view inquiry, const GameInfoSnapshot& info) {
  const std::string treasure =
      info.treasure ? "Treasure position: " + to_string(*info.treasure) : "You cannot see the treasure position.";
  std::string user = replace_all(std::string(prompts::kAnswerUser), "{tokenPos}", to_string(info.token));
  user = replace_all(std::move(user), "{action}", to_string(info.action));
  user = replace_all(std::move(user), "{treasureInfo}", treasure);
  user = replace_all(std::move(user), "{message}", inquiry);
  return {{"system", std::string(prompts::kAnswerSystem)}, {"user", std::move(user)}};
}

LlmClient::LlmClient(LlmClientConfig config, std::shared_ptr<ChatTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)) {
  config_.validate();
  if (!transport_) transport_ = std::make_shared<HttpChatTransport>();
}

std::string LlmClient::classify(std::string_view text, const std::vector<FewShotExample>& examples) {
  return round_trip(classification_prompt(text, examples));
}

std::string LlmClient::answer(std::string_view inquiry, const GameInfoSnapshot& info) {
  return round_trip(answer_prompt(inquiry, info));
}

std::string LlmClient::round_trip(const std::vector<ChatMessage>& messages) {
  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    try {
      return transport_->complete(config_, messages);
    } catch (const TransportError& e) {
      last_error = e.what();
    }
  }
  throw TransportError(last_error);
}

}  // namespace gnomes

#pragma once

#include <deque>
#include <mutex>

#include "gnomes/language/llm_client.hpp"

namespace gnomes::testing {

/// Replays queued replies; an empty queue or a queued failure raises
/// TransportError. Records every request it sees.
class CannedTransport : public ChatTransport {
 public:
  struct Reply {
    std::string content;
    bool fail = false;
  };

  void push(std::string content) { replies_.push_back({std::move(content), false}); }
  void push_failure() { replies_.push_back({{}, true}); }

  std::string complete(const LlmClientConfig&, const std::vector<ChatMessage>& messages) override {
    std::lock_guard lock(mu_);
    requests.push_back(messages);
    if (replies_.empty()) throw TransportError("no canned reply");
    Reply r = std::move(replies_.front());
    replies_.pop_front();
    if (r.fail) throw TransportError("timeout");
    return r.content;
  }

  std::vector<std::vector<ChatMessage>> requests;

 private:
  std::mutex mu_;
  std::deque<Reply> replies_;
};

}  // namespace gnomes::testing

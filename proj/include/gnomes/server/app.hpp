#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "gnomes/server/session.hpp"

namespace httplib {
class Server;
}

namespace gnomes {

struct ServerConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::filesystem::path log_dir = "sessions";
  /// Absent: rule-based language only.
  std::optional<LlmClientConfig> llm;
  int iterations = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Reads a JSON config file (empty path: defaults), then applies the
/// GNOMES_HOST, GNOMES_PORT and GNOMES_LOG_DIR environment overrides.
ServerConfig load_server_config(const std::filesystem::path& path);
SessionOptions session_options(const ServerConfig& config);

/// Registers every route on `server`.
///
///   GET  /health
///   POST /sessions                      {condition, seed?, maze?}
///   POST /sessions/{id}/join
///   GET  /sessions/{id}/state?client=
///   POST /sessions/{id}/move            {client, direction}
///   POST /sessions/{id}/chat            {client, text}
///   GET  /sessions/{id}/events?client=&after=
///   GET  /sessions/{id}/stream?client=&after=   (text/event-stream)
void install_routes(httplib::Server& server, SessionManager& sessions);

int run_server(const ServerConfig& config);

}  // namespace gnomes

#include "gnomes/server/app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <httplib.h>

namespace gnomes {

namespace {

using nlohmann::json;

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code, const std::string& message) {
  send_json(res, status, {{"v", kWireVersion}, {"error", {{"code", code}, {"message", message}}}});
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j = json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ServerError(400, "bad-json", "request body must be a JSON object");
  return j;
}

std::string require_string(const json& body, const char* key) {
  const auto it = body.find(key);
  if (it == body.end() || !it->is_string())
    throw ServerError(400, "bad-request", std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

std::string query(const httplib::Request& req, const char* key) {
  if (!req.has_param(key)) throw ServerError(400, "bad-request", std::string("missing query parameter '") + key + "'");
  return req.get_param_value(key);
}

std::int64_t after_param(const httplib::Request& req) {
  if (!req.has_param("after")) return 0;
  try {
    return std::stoll(req.get_param_value("after"));
  } catch (const std::exception&) {
    throw ServerError(400, "bad-request", "'after' must be an integer");
  }
}

/// Wraps a handler so ServerError and malformed input become JSON errors.
template <typename F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const ServerError& e) {
      send_error(res, e.status(), e.code(), e.what());
    } catch (const json::exception& e) {
      send_error(res, 400, "bad-request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

}  // namespace

void ServerConfig::validate() const {
  if (port < 0 || port > 65535) throw InputError("port out of range");
  if (iterations < 1) throw InputError("iterations must be positive");
  if (llm) llm->validate();
}

ServerConfig load_server_config(const std::filesystem::path& path) {
  ServerConfig c;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    const json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw InputError(path.string() + ": not a JSON object");
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.log_dir = j.value("log_dir", c.log_dir.string());
    c.iterations = j.value("iterations", c.iterations);
    c.seed = j.value("seed", c.seed);
    if (j.contains("llm") && !j["llm"].is_null()) c.llm = LlmClientConfig::from_json(j["llm"]);
  }
  if (const char* v = std::getenv("GNOMES_HOST")) c.host = v;
  if (const char* v = std::getenv("GNOMES_PORT")) {
    try {
      c.port = std::stoi(v);
    } catch (const std::exception&) {
      throw InputError("GNOMES_PORT is not a number");
    }
  }
  if (const char* v = std::getenv("GNOMES_LOG_DIR")) c.log_dir = v;
  c.validate();
  return c;
}

SessionOptions session_options(const ServerConfig& config) {
  SessionOptions o;
  o.planner.iterations = config.iterations;
  o.seed = config.seed;
  o.log_dir = config.log_dir;
  return o;
}

void install_routes(httplib::Server& server, SessionManager& sessions) {
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"v", kWireVersion}, {"status", "ok"}});
  });

  server.Post("/sessions", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto condition = parse_session_condition(require_string(body, "condition"));
    if (!condition) throw ServerError(400, "bad-request", "condition must be vs-agent-comm, vs-agent-mute or vs-human");
    std::optional<std::uint64_t> seed;
    if (body.contains("seed")) seed = body.at("seed").get<std::uint64_t>();
    std::optional<std::string> maze;
    if (body.contains("maze")) maze = require_string(body, "maze");
    const auto created = sessions.create(*condition, seed, maze);
    const std::string& id = created.session->id();
    send_json(res, 201, {{"v", kWireVersion},
                         {"session_id", id},
                         {"client_id", created.client},
                         {"seat", "H"},
                         {"condition", to_string(*condition)},
                         {"join_path", "/sessions/" + id + "/join"}});
  }));

  server.Post(R"(/sessions/([0-9a-f]+)/join)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.find(req.matches[1]);
    const std::string client = s->join();
    send_json(res, 200, {{"v", kWireVersion}, {"session_id", s->id()}, {"client_id", client}, {"seat", "E"}});
  }));

  server.Get(R"(/sessions/([0-9a-f]+)/state)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.find(req.matches[1]);
    send_json(res, 200, s->state_for(s->seat_of(query(req, "client"))));
  }));

  server.Post(R"(/sessions/([0-9a-f]+)/move)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    const auto direction = parse_direction(require_string(body, "direction"));
    if (!direction) throw ServerError(400, "bad-request", "direction must be up, down, left, right or noop");
    const MoveResult r = sessions.submit_move(req.matches[1], require_string(body, "client"), *direction);
    json out{{"v", kWireVersion}, {"applied", r.applied}};
    if (!r.applied) out["message"] = r.message;
    send_json(res, 200, out);
  }));

  server.Post(R"(/sessions/([0-9a-f]+)/chat)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    const json body = parse_body(req);
    sessions.submit_chat(req.matches[1], require_string(body, "client"), require_string(body, "text"));
    send_json(res, 202, {{"v", kWireVersion}, {"accepted", true}});
  }));

  server.Get(R"(/sessions/([0-9a-f]+)/events)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.find(req.matches[1]);
    const Player seat = s->seat_of(query(req, "client"));
    send_json(res, 200, {{"v", kWireVersion}, {"events", s->events_for(seat, after_param(req))}});
  }));

  server.Get(R"(/sessions/([0-9a-f]+)/stream)", guarded([&sessions](const httplib::Request& req, httplib::Response& res) {
    auto s = sessions.find(req.matches[1]);
    const Player seat = s->seat_of(query(req, "client"));
    auto cursor = std::make_shared<std::int64_t>(after_param(req));
    res.set_chunked_content_provider("text/event-stream", [s, seat, cursor](size_t, httplib::DataSink& sink) {
      if (!s->wait_for_events(*cursor, std::chrono::seconds(15))) {
        const std::string ping = ": keep-alive\n\n";
        return sink.write(ping.data(), ping.size());
      }
      const std::int64_t last = s->last_seq();
      for (const auto& e : s->events_for(seat, *cursor)) {
        const std::string chunk =
            "id: " + std::to_string(e["seq"].get<std::int64_t>()) + "\nevent: " + e["kind"].get<std::string>() +
            "\ndata: " + e.dump() + "\n\n";
        if (!sink.write(chunk.data(), chunk.size())) return false;
        *cursor = std::max(*cursor, e["seq"].get<std::int64_t>());
      }
      *cursor = std::max(*cursor, last);
      if (s->finished() && *cursor >= s->last_seq()) {
        sink.done();
      }
      return true;
    });
  }));
}

int run_server(const ServerConfig& config) {
  SessionManager sessions(session_options(config), config.llm);
  httplib::Server server;
  install_routes(server, sessions);
  std::clog << "listening on " << config.host << ':' << config.port << ", logs in " << config.log_dir << '\n';
  if (!server.listen(config.host, config.port)) {
    std::cerr << "error: cannot listen on " << config.host << ':' << config.port << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gnomes

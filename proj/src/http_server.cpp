#include "stepahp/http_server.hpp"

#include <httplib.h>

#include "stepahp/io.hpp"

namespace stepahp::service {

using nlohmann::json;

namespace {

constexpr auto kMaxWait = std::chrono::seconds(30);

std::string bearer_token(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.rfind(kPrefix, 0) != 0) return {};
  return header.substr(kPrefix.size());
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const std::exception& e) {
    const ErrorResponse err = error_response(e);
    send_json(res, err.status, err.body);
  }
}

json parse_body(const httplib::Request& req) {
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed JSON body: ") + e.what());
  }
}

}  // namespace

HttpServer::HttpServer(SessionService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;

  srv.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      if (!body.is_object() || !body.contains("hierarchy") || !body.contains("members")) {
        throw FormatError("create body needs 'hierarchy' and 'members'");
      }
      StopRule rule;
      if (body.contains("stop_rule")) rule = io::stop_rule_from_json(body.at("stop_rule"));
      const CreatedSession created = service_.create(io::hierarchy_from_json(body.at("hierarchy")),
                                                     io::members_from_json(body.at("members")), rule);
      send_json(res, 201,
                {{"session_id", created.session_id},
                 {"facilitator_token", created.facilitator_token},
                 {"member_tokens", created.member_tokens}});
    });
  });

  srv.Get(R"(/api/sessions/([A-Za-z0-9-]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      std::optional<std::uint64_t> since;
      auto wait = std::chrono::milliseconds(0);
      if (req.has_param("since")) since = std::stoull(req.get_param_value("since"));
      if (req.has_param("wait_ms")) {
        wait = std::min<std::chrono::milliseconds>(
            std::chrono::milliseconds(std::stoll(req.get_param_value("wait_ms"))), kMaxWait);
      }
      send_json(res, 200, service_.state(req.matches[1], since, wait));
    });
  });

  srv.Post(R"(/api/sessions/([A-Za-z0-9-]+)/judgments)",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               const std::string id = req.matches[1];
               const std::string token = bearer_token(req);
               std::uint64_t version = 0;
               if (req.has_param("partial") && req.get_param_value("partial") == "1") {
                 const json body = parse_body(req);
                 if (!body.is_object() || body.value("kind", "") != "judgment-set" || !body.contains("payload")) {
                   throw FormatError("partial submission must be a judgment-set envelope");
                 }
                 const std::string found = body.value("format_version", "");
                 if (found != io::kFormatVersion) throw VersionError(found, std::string(io::kFormatVersion));
                 const json& payload = body.at("payload");
                 const std::string owner = payload.value("owner", "");
                 version = service_.submit_patch(id, token, owner, io::patch_from_json(payload, owner));
               } else {
                 version = service_.submit(id, token, io::decode_as<JudgmentSet>(req.body));
               }
               send_json(res, 200, {{"version", version}});
             });
           });

  srv.Post(R"(/api/sessions/([A-Za-z0-9-]+)/advance)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      service_.advance(id, bearer_token(req));
      send_json(res, 200, service_.state(id));
    });
  });

  srv.Get(R"(/api/sessions/([A-Za-z0-9-]+)/trajectory\.csv)",
          [this](const httplib::Request& req, httplib::Response& res) {
            guarded(res, [&] {
              res.status = 200;
              res.set_content(service_.trajectory_csv(req.matches[1]), "text/csv");
            });
          });

  srv.Get(R"(/api/sessions/([A-Za-z0-9-]+)/document)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      res.status = 200;
      res.set_content(service_.session_document(req.matches[1]), "application/json");
    });
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port;
  if (port == 0) {
    bound = server_->bind_to_any_port(host);
  } else if (!server_->bind_to_port(host, port)) {
    bound = -1;
  }
  if (bound <= 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { server_->listen_after_bind(); }

void HttpServer::stop() {
  if (server_) server_->stop();
}

}  // namespace stepahp::service

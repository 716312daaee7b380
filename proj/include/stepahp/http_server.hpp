#pragma once
// HTTP front end for SessionService.
//
//   POST /api/sessions                         create (hierarchy, members, stop_rule)
//   GET  /api/sessions/{id}[?since=V&wait_ms=T] diagnostics view, long-poll on V
//   POST /api/sessions/{id}/judgments[?partial=1] judgment-set document, member token
//   POST /api/sessions/{id}/advance            facilitator token
//   GET  /api/sessions/{id}/trajectory.csv
//   GET  /api/sessions/{id}/document           canonical session document
//
// Tokens travel as "Authorization: Bearer <token>".

#include <memory>
#include <string>

#include "stepahp/service.hpp"

namespace httplib {
class Server;
}

namespace stepahp::service {

class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and returns the port (an ephemeral one when port == 0).
  // Throws IoError when binding fails.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  void listen();
  void stop();

 private:
  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace stepahp::service

#pragma once
// JSON-over-HTTP front end for GameService. Routes live under /api/v1.

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "invbench/game/service.hpp"

namespace invbench::game {

struct HttpApiOptions {
  std::string allowed_origin = "*";
  std::optional<std::filesystem::path> static_dir;  // served at "/" when set
};

class HttpApi {
 public:
  HttpApi(GameService& service, HttpApiOptions options = {});
  ~HttpApi();
  HttpApi(const HttpApi&) = delete;
  HttpApi& operator=(const HttpApi&) = delete;

  /// Binds host:port, returns false on failure. Blocks until stop().
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1). Call listen_after_bind() next.
  int bind_to_any_port(const std::string& host);
  bool listen_after_bind();
  void stop();
  bool running() const;
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace invbench::game

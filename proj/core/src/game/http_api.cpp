#include "invbench/game/http_api.hpp"

#include <httplib.h>

#include "invbench/common/error.hpp"

namespace invbench::game {
namespace {

Json error_body(const std::string& code, const std::string& message, const Json& details = nullptr) {
  Json body = {{"error", {{"code", code}, {"message", message}}}};
  if (!details.is_null()) body["error"]["details"] = details;
  return body;
}

void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

Json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Json::object();
  try {
    Json j = Json::parse(req.body);
    if (!j.is_object()) throw ServiceError(400, "invalid_body", "request body must be a JSON object");
    return j;
  } catch (const Json::parse_error&) {
    throw ServiceError(400, "invalid_json", "request body is not valid JSON");
  }
}

bool flag_param(const httplib::Request& req, const char* key, bool fallback) {
  if (!req.has_param(key)) return fallback;
  const auto v = req.get_param_value(key);
  return !(v == "0" || v == "false" || v == "no");
}

std::string string_field(const Json& body, const char* key, bool required) {
  const auto it = body.find(key);
  if (it == body.end() || it->is_null()) {
    if (required) throw ServiceError(400, "missing_field", std::string("'") + key + "' is required");
    return {};
  }
  if (!it->is_string()) throw ServiceError(400, "invalid_field", std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

}  // namespace

struct HttpApi::Impl {
  GameService& service;
  HttpApiOptions options;
  httplib::Server server;

  Impl(GameService& s, HttpApiOptions o) : service(s), options(std::move(o)) { routes(); }

  template <class F>
  httplib::Server::Handler wrap(F f) {
    return [f](const httplib::Request& req, httplib::Response& res) {
      try {
        f(req, res);
      } catch (const ServiceError& e) {
        send(res, e.status(), error_body(e.code(), e.what(), e.details()));
      } catch (const ValidationError& e) {
        send(res, 400, error_body("validation_error", e.what()));
      } catch (const std::exception& e) {
        send(res, 500, error_body("internal_error", e.what()));
      }
    };
  }

  void routes() {
    server.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
      res.set_header("Access-Control-Allow-Origin", options.allowed_origin);
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    });
    server.Options(R"(/api/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Get("/api/v1/health", wrap([this](const httplib::Request&, httplib::Response& res) {
      send(res, 200, service.health());
    }));

    server.Post("/api/v1/assignments", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const auto a = service.create_assignment(string_field(body, "token", true));
      send(res, 201, service.assignment_view(a.token));
    }));

    server.Get(R"(/api/v1/assignments/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, service.assignment_view(req.matches[1]));
    }));

    server.Post("/api/v1/sessions", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      const std::string token = string_field(body, "token", true);
      const auto it = body.find("instance_index");
      if (it == body.end() || !it->is_number_integer())
        throw ServiceError(400, "invalid_instance_index", "instance_index must be an integer");
      send(res, 201, service.start_session(token, it->get<int>()));
    }));

    server.Get(R"(/api/v1/sessions/([^/]+))", wrap([this](const httplib::Request& req, httplib::Response& res) {
      send(res, 200, service.session_view(req.matches[1]));
    }));

    server.Post(R"(/api/v1/sessions/([^/]+)/orders)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send(res, 200, service.submit_order(req.matches[1], body.value("quantity", Json(nullptr))));
    }));

    server.Post(R"(/api/v1/sessions/([^/]+)/guidance)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send(res, 200, service.submit_guidance(req.matches[1], string_field(body, "text", false)));
    }));

    server.Post(R"(/api/v1/sessions/([^/]+)/feedback)", wrap([this](const httplib::Request& req, httplib::Response& res) {
      const Json body = parse_body(req);
      send(res, 200, service.submit_feedback(req.matches[1], string_field(body, "text", true)));
    }));

    server.Get("/api/v1/log", wrap([this](const httplib::Request& req, httplib::Response& res) {
      ExportFilter filter;
      if (req.has_param("token")) filter.token = req.get_param_value("token");
      filter.events = flag_param(req, "events", true);
      filter.samples = flag_param(req, "samples", true);
      res.status = 200;
      res.set_content(service.export_log(filter), "application/x-ndjson");
    }));

    if (options.static_dir) server.set_mount_point("/", options.static_dir->string());

    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (res.body.empty()) send(res, res.status, error_body(res.status == 404 ? "not_found" : "http_error", "no such route"));
    });
  }
};

HttpApi::HttpApi(GameService& service, HttpApiOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}
HttpApi::~HttpApi() { stop(); }

bool HttpApi::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpApi::bind_to_any_port(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpApi::listen_after_bind() { return impl_->server.listen_after_bind(); }
void HttpApi::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}
bool HttpApi::running() const { return impl_->server.is_running(); }
void HttpApi::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace invbench::game

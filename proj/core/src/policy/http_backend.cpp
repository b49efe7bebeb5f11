#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "invbench/common/error.hpp"
#include "invbench/policy/chat.hpp"

namespace invbench::policy {

HttpChatBackend::HttpChatBackend(HttpBackendConfig config) : config_(std::move(config)) {
  if (config_.model.empty()) throw ValidationError("model", "an HTTP backend needs a model name");
  if (config_.base_url.empty()) throw ValidationError("base_url", "required");
}

Json HttpChatBackend::request_body(const ChatRequest& req) const {
  return Json{{"model", config_.model},
              {"temperature", config_.temperature},
              {"messages", Json::array({{{"role", "system"}, {"content", req.system}},
                                        {{"role", "user"}, {"content", req.user}}})}};
}

std::string HttpChatBackend::content_of(const Json& body) {
  try {
    const auto& content = body.at("choices").at(0).at("message").at("content");
    if (content.is_string()) return content.get<std::string>();
  } catch (const nlohmann::json::exception&) {
  }
  throw BackendError("chat response has no choices[0].message.content");
}

ChatResponse HttpChatBackend::complete(const ChatRequest& req) {
  httplib::Client client(config_.base_url);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout).count();
  client.set_read_timeout(secs, 0);
  client.set_write_timeout(secs, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key)
    headers.emplace("Authorization", std::string("Bearer ") + key);
  const std::string body = request_body(req).dump();

  std::string last_error;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) std::this_thread::sleep_for(config_.backoff * (1 << (attempt - 1)));
    const auto start = std::chrono::steady_clock::now();
    auto res = client.Post(config_.path, headers, body, "application/json");
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (!res) {
      last_error = "transport error: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) throw BackendError("HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 300));
    const Json parsed = Json::parse(res->body, nullptr, false);
    if (parsed.is_discarded()) {
      last_error = "response body is not JSON";
      continue;
    }
    return {content_of(parsed), ms};
  }
  throw BackendError("chat endpoint " + config_.base_url + config_.path + " failed after " +
                     std::to_string(config_.max_retries + 1) + " attempts: " + last_error);
}

std::string HttpChatBackend::describe() const { return "http:" + config_.base_url + config_.path + "#" + config_.model; }

}  // namespace invbench::policy

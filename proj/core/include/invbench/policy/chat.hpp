#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "invbench/common/json_util.hpp"
#include "invbench/policy/base_stock.hpp"
#include "invbench/policy/types.hpp"
#include "invbench/sim/simulator.hpp"

namespace invbench::policy {

/// Transport failure after retries.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChatRequest {
  std::string system;
  std::string user;
  double temperature = 0.0;
  // Structured copy of what the prompt renders; used by scripted mocks only.
  Method method = Method::OR_TO_LLM;
  sim::Observation observation;
  std::optional<ORAdvice> advice;
  std::optional<std::string> guidance;
  std::optional<std::string> human_feedback;
  int attempt = 0;  // 0 for the first call, 1 for a re-prompt
};

struct ChatResponse {
  std::string text;
  double latency_ms = 0.0;
};

/// Implementations must be safe to call from several threads at once.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse complete(const ChatRequest& request) = 0;
  virtual std::string describe() const = 0;
};

/// Deterministic scripted agent. Script document:
///   {"kind": "follow-or"}
///   {"kind": "fixed", "quantity": 40}
///   {"kind": "by-period", "quantities": {"3": 0, "7": 250}, "default": "follow-or" | number}
///   {"kind": "params-by-period", "default": {"lead_time": 2}, "periods": {"5": {"mean_demand_over_horizon": 300}}}
/// Optional keys for any kind:
///   "insights": {"<period>": "text" | ["list"]}   carry-over output per period
///   "raw": {"<period>": "verbatim reply"}         first attempt only
///   "guidance_scale": true                        multiply by a number found in Mode C guidance ("x1.2")
class MockChatBackend : public ChatBackend {
 public:
  explicit MockChatBackend(Json script);
  static std::unique_ptr<MockChatBackend> from_file(const std::filesystem::path& path);
  /// "follow-or", "fixed:40", "zero" shorthands used by the CLI.
  static std::unique_ptr<MockChatBackend> from_spec(const std::string& spec);

  ChatResponse complete(const ChatRequest& request) override;
  std::string describe() const override;

 private:
  Json script_;
};

struct HttpBackendConfig {
  std::string base_url = "https://api.openai.com";
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 0.0;
  int max_retries = 3;
  std::chrono::milliseconds timeout{120000};
  std::chrono::milliseconds backoff{1000};
};

/// OpenAI-compatible chat completion endpoint.
class HttpChatBackend : public ChatBackend {
 public:
  explicit HttpChatBackend(HttpBackendConfig config);
  ChatResponse complete(const ChatRequest& request) override;
  std::string describe() const override;

  /// Request body (exposed for tests).
  Json request_body(const ChatRequest& request) const;
  /// Pulls choices[0].message.content; throws BackendError otherwise.
  static std::string content_of(const Json& body);

 private:
  HttpBackendConfig config_;
};

}  // namespace invbench::policy

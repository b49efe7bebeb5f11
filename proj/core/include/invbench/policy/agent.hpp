#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invbench/policy/base_stock.hpp"
#include "invbench/policy/chat.hpp"
#include "invbench/policy/insights.hpp"
#include "invbench/policy/prompts.hpp"
#include "invbench/policy/types.hpp"

namespace invbench::policy {

/// Backend failure, tagged with the period it happened in.
class AgentError : public std::runtime_error {
 public:
  AgentError(int period, const std::string& what)
      : std::runtime_error("period " + std::to_string(period) + ": " + what), period_(period) {}
  int period() const noexcept { return period_; }

 private:
  int period_;
};

struct AgentConfig {
  Method method = Method::OR;
  std::shared_ptr<ChatBackend> backend;  // required unless method == OR
  double temperature = 0.0;
  int max_reprompts = 1;
  std::string label;  // defaults to the method name

  std::string display_label() const { return label.empty() ? to_string(method) : label; }
};

struct DecideOptions {
  PromptOptions prompt;
  std::optional<std::string> guidance;        // Mode C
  std::optional<std::string> human_feedback;  // Mode B stage two
  std::optional<double> initial_proposal;
};

struct AgentTurn {
  Decision decision;
  std::optional<ORAdvice> advice;        // what the OR block showed, or the LLM_TO_OR computation
  std::optional<ParamEstimate> params;
  std::string raw_response;
  std::vector<std::string> parse_errors;
  bool fell_back = false;
  int calls = 0;
  double latency_ms = 0.0;
};

class Agent {
 public:
  explicit Agent(AgentConfig config);

  /// One period: OR passthrough, or a single chat call (plus at most
  /// `max_reprompts` re-prompts on malformed output). Unusable output falls
  /// back to the OR quantity when the method has one, otherwise to 0.
  /// Updates `insights` from the decision. Throws AgentError on backend failure.
  AgentTurn decide(const sim::Observation& observation, InsightStore& insights, const DecideOptions& options = {}) const;

  const AgentConfig& config() const { return config_; }

 private:
  AgentConfig config_;
};

}  // namespace invbench::policy

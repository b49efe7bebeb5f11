#pragma once

#include <optional>
#include <string>

#include "invbench/policy/base_stock.hpp"
#include "invbench/policy/insights.hpp"
#include "invbench/policy/types.hpp"
#include "invbench/sim/simulator.hpp"

namespace invbench::policy {

enum class HumanMode { None, B, C };

struct PromptOptions {
  HumanMode human_mode = HumanMode::None;
  bool two_stage_feedback = false;  // Mode B revision flow
};

struct PromptInput {
  Method method = Method::OR_TO_LLM;
  const sim::Observation* observation = nullptr;
  const ORAdvice* advice = nullptr;  // the data-driven recommendation, if shown
  const InsightStore* insights = nullptr;
  std::optional<std::string> guidance;        // Mode C, prepended
  std::optional<std::string> human_feedback;  // Mode B stage two
  std::optional<double> initial_proposal;     // Mode B stage two
  PromptOptions options;
};

struct Prompt {
  std::string system;
  std::string user;
};

/// Fixed for an episode: depends on the method and the instance parameters only.
std::string build_system_prompt(Method method, const sim::Observation& observation, const PromptOptions& options = {});

/// Insights, observation, then the OR block (for methods that see it).
std::string build_user_message(const PromptInput& input);

/// Throws ValidationError for the OR method, which never prompts.
Prompt build_prompts(const PromptInput& input);

/// Appended to the user message when the previous answer could not be parsed.
std::string reprompt_note(const std::string& error);

}  // namespace invbench::policy

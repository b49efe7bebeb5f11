#include "invbench/policy/agent.hpp"

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"
#include "invbench/policy/response_parser.hpp"

namespace invbench::policy {

Agent::Agent(AgentConfig config) : config_(std::move(config)) {
  if (uses_llm(config_.method) && !config_.backend)
    throw ValidationError("backend", "method " + to_string(config_.method) + " needs a chat backend");
  if (config_.max_reprompts < 0) throw ValidationError("max_reprompts", "must be non-negative");
}

AgentTurn Agent::decide(const sim::Observation& obs, InsightStore& insights, const DecideOptions& options) const {
  AgentTurn turn;
  const Method method = config_.method;
  const ORAdvice base = or_recommendation(obs);

  if (method == Method::OR) {
    turn.advice = base;
    turn.decision.quantity = base.quantity;
    turn.decision.rationale = "Capped base-stock: B = " + format_fixed(base.base_stock, 2) + ", IP = " +
                              format_fixed(base.inventory_position, 2) + ", cap = " + format_fixed(base.cap, 2) + ".";
    turn.decision.short_rationale_for_human = "Order up to the base-stock level, capped.";
    return turn;
  }

  PromptInput input;
  input.method = method;
  input.observation = &obs;
  input.advice = method == Method::LLM ? nullptr : &base;
  input.insights = &insights;
  input.guidance = options.guidance;
  input.human_feedback = options.human_feedback;
  input.initial_proposal = options.initial_proposal;
  input.options = options.prompt;
  const Prompt prompt = build_prompts(input);

  ChatRequest req;
  req.system = prompt.system;
  req.user = prompt.user;
  req.temperature = config_.temperature;
  req.method = method;
  req.observation = obs;
  if (method != Method::LLM) req.advice = base;
  req.guidance = options.guidance;
  req.human_feedback = options.human_feedback;

  for (int attempt = 0; attempt <= config_.max_reprompts; ++attempt) {
    req.attempt = attempt;
    ChatResponse res;
    try {
      res = config_.backend->complete(req);
    } catch (const std::exception& e) {
      throw AgentError(obs.period, e.what());
    }
    ++turn.calls;
    turn.latency_ms += res.latency_ms;
    turn.raw_response = res.text;
    try {
      AgentResponse parsed = parse_agent_response(res.text, method, obs.item_id);
      turn.decision = std::move(parsed.decision);
      if (method == Method::LLM_TO_OR) {
        turn.params = parsed.params;
        turn.advice = or_recommendation(obs, *parsed.params);
        turn.decision.quantity = turn.advice->quantity;
      } else if (method == Method::OR_TO_LLM) {
        turn.advice = base;
      }
      insights.apply(turn.decision, obs.period);
      return turn;
    } catch (const ParseError& e) {
      turn.parse_errors.emplace_back(e.what());
      req.user = prompt.user + reprompt_note(e.what());
    }
  }

  turn.fell_back = true;
  if (method != Method::LLM) {
    turn.advice = base;
    turn.decision.quantity = base.quantity;
    turn.decision.rationale = "fallback to the OR recommendation after unusable output";
  } else {
    turn.decision.quantity = 0.0;
    turn.decision.rationale = "fallback to zero after unusable output";
  }
  return turn;
}

}  // namespace invbench::policy

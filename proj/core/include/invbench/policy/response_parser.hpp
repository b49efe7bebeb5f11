#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "invbench/common/json_util.hpp"
#include "invbench/policy/base_stock.hpp"
#include "invbench/policy/types.hpp"

namespace invbench::policy {

class ParseError : public std::runtime_error {
 public:
  enum class Kind { NoJson, MissingAction, InvalidQuantity, InvalidParameters };
  ParseError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct AgentResponse {
  Decision decision;                     // quantity unset (0) for LLM_TO_OR
  std::optional<ParamEstimate> params;   // LLM_TO_OR only
};

/// First JSON object in the text: a fenced ```json block wins, otherwise the
/// first balanced {...} that parses. Throws ParseError(NoJson).
Json extract_json_object(std::string_view raw);

/// Accepted action shapes: {"action": {"<item>": q}}, {"action": {"<other>": q}}
/// when it is the only key, {"action": q}, and numeric strings.
AgentResponse parse_agent_response(std::string_view raw, Method method, const std::string& item_id);

}  // namespace invbench::policy

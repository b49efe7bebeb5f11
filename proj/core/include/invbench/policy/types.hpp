#pragma once

#include <optional>
#include <string>
#include <vector>

namespace invbench::policy {

enum class Method { OR, LLM, OR_TO_LLM, LLM_TO_OR };

/// "or", "llm", "or_to_llm", "llm_to_or".
std::string to_string(Method method);
/// Also accepts "or->llm" / "llm->or" and upper case. Throws ValidationError.
Method method_from_string(const std::string& text);
bool uses_llm(Method method);

struct Decision {
  double quantity = 0.0;
  std::string rationale;
  std::string short_rationale_for_human;
  /// A new memo to append ("" for none).
  std::string carry_over_insight;
  /// Set when the agent returned a full list: replaces the stored insights.
  std::optional<std::vector<std::string>> insight_replacement;
};

}  // namespace invbench::policy

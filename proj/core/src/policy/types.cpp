#include "invbench/policy/types.hpp"

#include <cctype>

#include "invbench/common/error.hpp"

namespace invbench::policy {

std::string to_string(Method method) {
  switch (method) {
    case Method::OR: return "or";
    case Method::LLM: return "llm";
    case Method::OR_TO_LLM: return "or_to_llm";
    case Method::LLM_TO_OR: return "llm_to_or";
  }
  return "or";
}

Method method_from_string(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "or") return Method::OR;
  if (t == "llm") return Method::LLM;
  if (t == "or_to_llm" || t == "or->llm" || t == "or-to-llm") return Method::OR_TO_LLM;
  if (t == "llm_to_or" || t == "llm->or" || t == "llm-to-or") return Method::LLM_TO_OR;
  throw ValidationError("method", "unknown method '" + text + "'");
}

bool uses_llm(Method method) { return method != Method::OR; }

}  // namespace invbench::policy

#include "invbench/policy/response_parser.hpp"

#include <cmath>

namespace invbench::policy {
namespace {

using Kind = ParseError::Kind;

std::optional<Json> try_parse(std::string_view text) {
  Json j = Json::parse(text.begin(), text.end(), nullptr, false);
  if (j.is_discarded() || !j.is_object()) return std::nullopt;
  return j;
}

// End index (exclusive) of the balanced object starting at `open`, honoring strings.
std::optional<std::size_t> balanced_end(std::string_view s, std::size_t open) {
  int depth = 0;
  bool in_string = false, escaped = false;
  for (std::size_t i = open; i < s.size(); ++i) {
    const char c = s[i];
    if (in_string) {
      if (escaped)
        escaped = false;
      else if (c == '\\')
        escaped = true;
      else if (c == '"')
        in_string = false;
      continue;
    }
    if (c == '"')
      in_string = true;
    else if (c == '{')
      ++depth;
    else if (c == '}' && --depth == 0)
      return i + 1;
  }
  return std::nullopt;
}

std::optional<Json> first_object(std::string_view s) {
  for (std::size_t pos = s.find('{'); pos != std::string_view::npos; pos = s.find('{', pos + 1)) {
    if (const auto end = balanced_end(s, pos)) {
      if (auto j = try_parse(s.substr(pos, *end - pos))) return j;
    }
  }
  return std::nullopt;
}

std::optional<double> to_number(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    try {
      std::size_t used = 0;
      const double d = std::stod(s, &used);
      if (used == s.size()) return d;
    } catch (const std::exception&) {
    }
  }
  return std::nullopt;
}

double quantity_of(const Json& doc, const std::string& item) {
  if (!doc.contains("action")) throw ParseError(Kind::MissingAction, "response has no \"action\" key");
  const Json& action = doc.at("action");
  const Json* value = &action;
  if (action.is_object()) {
    if (action.contains(item))
      value = &action.at(item);
    else if (action.size() == 1)
      value = &action.begin().value();
    else
      throw ParseError(Kind::MissingAction, "action has no entry for \"" + item + "\"");
  }
  const auto q = to_number(*value);
  if (!q) throw ParseError(Kind::InvalidQuantity, "order quantity is not a number: " + value->dump());
  if (!std::isfinite(*q)) throw ParseError(Kind::InvalidQuantity, "order quantity is not finite");
  if (*q < 0.0) throw ParseError(Kind::InvalidQuantity, "order quantity is negative: " + value->dump());
  return *q;
}

std::string text_of(const Json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  const auto& v = doc.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

ParamEstimate params_of(const Json& doc) {
  const Json* src = &doc;
  if (doc.contains("parameters")) src = &doc.at("parameters");
  if (!src->is_object()) throw ParseError(Kind::InvalidParameters, "\"parameters\" must be an object");
  ParamEstimate p;
  auto read = [&](std::initializer_list<const char*> keys, std::optional<double>& out) {
    for (const char* k : keys) {
      if (!src->contains(k) || src->at(k).is_null()) continue;
      const auto v = to_number(src->at(k));
      if (!v || !std::isfinite(*v) || *v < 0.0)
        throw ParseError(Kind::InvalidParameters, std::string("parameter ") + k + " must be a non-negative number");
      out = v;
      return;
    }
  };
  read({"lead_time", "L"}, p.lead_time);
  read({"mean_demand_over_horizon", "mu"}, p.mean);
  read({"std_demand_over_horizon", "sigma"}, p.stddev);
  if (!p.lead_time && !p.mean && !p.stddev)
    throw ParseError(Kind::InvalidParameters, "no parameter estimates in the response");
  return p;
}

}  // namespace

Json extract_json_object(std::string_view raw) {
  for (std::size_t fence = raw.find("```"); fence != std::string_view::npos;) {
    const auto body = raw.find('\n', fence);
    if (body == std::string_view::npos) break;
    const auto close = raw.find("```", body);
    if (close == std::string_view::npos) break;
    if (auto j = first_object(raw.substr(body, close - body))) return *j;
    fence = raw.find("```", close + 3);
  }
  if (auto j = first_object(raw)) return *j;
  throw ParseError(Kind::NoJson, "no JSON object found in the response");
}

AgentResponse parse_agent_response(std::string_view raw, Method method, const std::string& item_id) {
  const Json doc = extract_json_object(raw);
  AgentResponse r;
  r.decision.rationale = text_of(doc, "rationale");
  r.decision.short_rationale_for_human = text_of(doc, "short_rationale_for_human");
  if (doc.contains("carry_over_insight")) {
    const auto& ins = doc.at("carry_over_insight");
    if (ins.is_array()) {
      std::vector<std::string> list;
      for (const auto& e : ins) list.push_back(e.is_string() ? e.get<std::string>() : e.dump());
      r.decision.insight_replacement = std::move(list);
    } else if (ins.is_string()) {
      r.decision.carry_over_insight = ins.get<std::string>();
    }
  }
  if (method == Method::LLM_TO_OR)
    r.params = params_of(doc);
  else
    r.decision.quantity = quantity_of(doc, item_id);
  return r;
}

}  // namespace invbench::policy

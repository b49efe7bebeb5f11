#include "invbench/policy/chat.hpp"

#include <cmath>
#include <regex>

#include "invbench/common/error.hpp"

namespace invbench::policy {
namespace {

const Json* by_period(const Json& script, const char* key, int period) {
  if (!script.contains(key)) return nullptr;
  const auto& table = script.at(key);
  const auto it = table.find(std::to_string(period));
  return it == table.end() ? nullptr : &*it;
}

double or_quantity(const ChatRequest& req) {
  if (req.advice) return req.advice->quantity;
  return or_recommendation(req.observation).quantity;
}

double guidance_factor(const ChatRequest& req) {
  if (!req.guidance) return 1.0;
  static const std::regex re(R"(x\s*([0-9]+(?:\.[0-9]+)?))");
  std::smatch m;
  if (std::regex_search(*req.guidance, m, re)) return std::stod(m[1].str());
  return 1.0;
}

}  // namespace

MockChatBackend::MockChatBackend(Json script) : script_(std::move(script)) {
  if (!script_.is_object() || !script_.contains("kind") || !script_.at("kind").is_string())
    throw ValidationError("mock", "script needs a string \"kind\"");
  const auto kind = script_.at("kind").get<std::string>();
  if (kind != "follow-or" && kind != "fixed" && kind != "by-period" && kind != "params-by-period")
    throw ValidationError("mock.kind", "unknown kind '" + kind + "'");
  if (kind == "fixed" && !script_.contains("quantity")) throw ValidationError("mock.quantity", "required for fixed");
}

std::unique_ptr<MockChatBackend> MockChatBackend::from_file(const std::filesystem::path& path) {
  return std::make_unique<MockChatBackend>(read_json_file(path));
}

std::unique_ptr<MockChatBackend> MockChatBackend::from_spec(const std::string& spec) {
  if (spec == "follow-or") return std::make_unique<MockChatBackend>(Json{{"kind", "follow-or"}});
  if (spec == "zero") return std::make_unique<MockChatBackend>(Json{{"kind", "fixed"}, {"quantity", 0}});
  if (spec.rfind("fixed:", 0) == 0) {
    try {
      return std::make_unique<MockChatBackend>(Json{{"kind", "fixed"}, {"quantity", std::stod(spec.substr(6))}});
    } catch (const std::invalid_argument&) {
      throw ValidationError("mock", "bad fixed quantity in '" + spec + "'");
    }
  }
  if (spec == "default-params")
    return std::make_unique<MockChatBackend>(Json{{"kind", "params-by-period"}, {"default", Json::object()}});
  return from_file(spec);
}

ChatResponse MockChatBackend::complete(const ChatRequest& req) {
  const int t = req.observation.period;
  if (req.attempt == 0) {
    if (const Json* raw = by_period(script_, "raw", t)) return {raw->get<std::string>(), 0.0};
  }
  Json reply = {{"rationale", "scripted reply for period " + std::to_string(t)},
                {"short_rationale_for_human", "Scripted decision."},
                {"carry_over_insight", ""}};
  if (const Json* ins = by_period(script_, "insights", t)) reply["carry_over_insight"] = *ins;

  const auto kind = script_.at("kind").get<std::string>();
  if (kind == "params-by-period") {
    Json params = script_.value("default", Json::object());
    if (params.is_object() && params.empty()) params = {{"lead_time", req.observation.promised_lead}};
    if (const Json* p = by_period(script_, "periods", t)) params = *p;
    reply["parameters"] = params;
    return {reply.dump(), 0.0};
  }

  double q = 0.0;
  if (kind == "follow-or") {
    q = or_quantity(req);
  } else if (kind == "fixed") {
    q = script_.at("quantity").get<double>();
  } else {
    const Json* v = by_period(script_, "quantities", t);
    const Json fallback = script_.value("default", Json("follow-or"));
    const Json& pick = v ? *v : fallback;
    q = pick.is_number() ? pick.get<double>() : or_quantity(req);
  }
  if (script_.value("guidance_scale", false)) q = std::round(q * guidance_factor(req));
  reply["action"] = {{req.observation.item_id, q}};
  return {reply.dump(), 0.0};
}

std::string MockChatBackend::describe() const { return "mock:" + script_.dump(); }

}  // namespace invbench::policy

#include "invbench/policy/insights.hpp"

#include <algorithm>

#include "invbench/common/error.hpp"

namespace invbench::policy {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

void InsightStore::apply(const Decision& decision, int period) {
  if (decision.insight_replacement) {
    replace(period, *decision.insight_replacement);
  } else {
    append(period, decision.carry_over_insight);
  }
}

void InsightStore::append(int period, const std::string& text) {
  const auto t = trim(text);
  if (t.empty()) return;
  if (std::any_of(items_.begin(), items_.end(), [&](const Insight& i) { return i.text == t; })) return;
  items_.push_back({period, t});
}

void InsightStore::replace(int period, const std::vector<std::string>& texts) {
  std::vector<Insight> next;
  for (const auto& raw : texts) {
    const auto t = trim(raw);
    if (t.empty()) continue;
    if (std::any_of(next.begin(), next.end(), [&](const Insight& i) { return i.text == t; })) continue;
    const auto old = std::find_if(items_.begin(), items_.end(), [&](const Insight& i) { return i.text == t; });
    next.push_back({old != items_.end() ? old->origin_period : period, t});
  }
  items_ = std::move(next);
}

std::string InsightStore::render() const {
  if (items_.empty()) return "(none)\n";
  std::string out;
  for (const auto& i : items_) out += "- [period " + std::to_string(i.origin_period) + "] " + i.text + "\n";
  return out;
}

}  // namespace invbench::policy

#include "invbench/sim/instance.hpp"

#include <cmath>

#include "invbench/common/error.hpp"

namespace invbench::sim {

void Instance::validate() const {
  if (id.empty()) throw ValidationError("id", "must be non-empty");
  if (demands.empty()) throw ValidationError("demands", "horizon must be positive");
  if (history.size() != kHistoryLength)
    throw ValidationError("history", "expected exactly 5 values, got " + std::to_string(history.size()));
  if (lead_times.size() != demands.size())
    throw ValidationError("lead_times", "length " + std::to_string(lead_times.size()) +
                                            " does not match horizon " + std::to_string(demands.size()));
  if (contexts.size() != demands.size())
    throw ValidationError("contexts", "length " + std::to_string(contexts.size()) +
                                          " does not match horizon " + std::to_string(demands.size()));
  for (auto d : demands)
    if (d < 0) throw ValidationError("demands", "negative demand " + std::to_string(d));
  for (auto d : history)
    if (d < 0) throw ValidationError("history", "negative demand " + std::to_string(d));
  for (const auto& l : lead_times)
    if (!l.is_lost() && l.periods() < 0) throw ValidationError("lead_times", "negative lead time");
  if (promised_lead < 0) throw ValidationError("promised_lead", "must be non-negative");
  if (!(profit > 0.0) || !std::isfinite(profit)) throw ValidationError("profit", "must be positive");
  if (!(holding > 0.0) || !std::isfinite(holding)) throw ValidationError("holding", "must be positive");
}

std::string to_string(Family family) {
  switch (family) {
    case Family::Synthetic: return "synthetic";
    case Family::Real: return "real";
    case Family::Custom: return "custom";
  }
  return "custom";
}

Family family_from_string(const std::string& text) {
  if (text == "synthetic") return Family::Synthetic;
  if (text == "real") return Family::Real;
  if (text == "custom") return Family::Custom;
  throw ValidationError("provenance.family", "unknown family '" + text + "'");
}

}  // namespace invbench::sim

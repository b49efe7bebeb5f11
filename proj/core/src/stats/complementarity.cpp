#include "invbench/stats/complementarity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "invbench/common/error.hpp"

namespace invbench::stats {
namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::H: return "H";
    case Mode::H_AI: return "H_AI";
    case Mode::C: return "C";
  }
  return "H";
}

Mode mode_from_string(const std::string& text) {
  if (text == "H" || text == "A") return Mode::H;
  if (text == "H_AI" || text == "B") return Mode::H_AI;
  if (text == "C") return Mode::C;
  throw ValidationError("mode", "unknown mode '" + text + "'");
}

AIBenchmark AIBenchmark::from_runs(const std::map<std::string, std::vector<double>>& runs) {
  AIBenchmark b;
  for (const auto& [z, v] : runs) {
    if (v.empty()) throw ValidationError("ai." + z, "no runs");
    b.value[z] = mean(v);
  }
  return b;
}

double AIBenchmark::at(const std::string& scenario) const {
  const auto it = value.find(scenario);
  if (it == value.end()) throw ValidationError("ai", "no AI benchmark for scenario '" + scenario + "'");
  return it->second;
}

void validate_samples(const std::vector<ComplementaritySample>& samples) {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& s : samples) {
    if (!std::isfinite(s.reward)) throw ValidationError("reward", "not finite for " + s.participant + "/" + s.scenario);
    if (!seen.insert({s.participant, s.scenario}).second)
      throw ValidationError("samples", "participant " + s.participant + " appears twice on scenario " + s.scenario);
  }
}

double ce_population(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai) {
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_scenario;  // H, H_AI
  for (const auto& s : samples) {
    if (s.mode == Mode::H) by_scenario[s.scenario].first.push_back(s.reward);
    if (s.mode == Mode::H_AI) by_scenario[s.scenario].second.push_back(s.reward);
  }
  if (by_scenario.empty()) throw ValidationError("samples", "no H or H_AI samples");
  double total = 0.0;
  for (const auto& [z, groups] : by_scenario) {
    if (groups.first.empty()) throw ValidationError("samples", "scenario '" + z + "' has no H (Mode A) samples");
    if (groups.second.empty()) throw ValidationError("samples", "scenario '" + z + "' has no H_AI (Mode B) samples");
    total += mean(groups.second) - std::max(mean(groups.first), ai.at(z));
  }
  return total / static_cast<double>(by_scenario.size());
}

EcdfPair ecdf_pair(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai) {
  std::map<std::string, std::vector<double>> a, b;
  for (const auto& s : samples) {
    if (s.mode == Mode::H_AI) a[s.participant].push_back(s.reward);
    if (s.mode == Mode::H) b[s.participant].push_back(std::max(s.reward, ai.at(s.scenario)));
  }
  if (a.empty()) throw ValidationError("samples", "no H_AI (Mode B) samples");
  if (b.empty()) throw ValidationError("samples", "no H (Mode A) samples");
  EcdfPair out;
  for (const auto& [p, v] : a) out.a.push_back(mean(v));
  for (const auto& [p, v] : b) out.b.push_back(mean(v));
  return out;
}

double ce_individual_avg(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai) {
  const auto pair = ecdf_pair(samples, ai);
  return mean(pair.a) - mean(pair.b);
}

ComplementaritySample sample_from_json(const Json& j) {
  try {
    ComplementaritySample s;
    s.participant = j.at("participant").get<std::string>();
    s.scenario = j.at("scenario").get<std::string>();
    s.mode = mode_from_string(j.at("mode").get<std::string>());
    s.reward = j.at("reward").get<double>();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed complementarity sample: ") + e.what());
  }
}

Json sample_to_json(const ComplementaritySample& s) {
  return {{"participant", s.participant}, {"scenario", s.scenario}, {"mode", to_string(s.mode)}, {"reward", s.reward}};
}

}  // namespace invbench::stats

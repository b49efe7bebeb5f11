#pragma once

#include <map>
#include <string>
#include <vector>

#include "invbench/common/json_util.hpp"

namespace invbench::stats {

/// H: human with OR support (Mode A). H_AI: human with OR and LLM (Mode B).
/// C: LLM with human guidance (Mode C); kept in logs, ignored by CE estimators.
enum class Mode { H, H_AI, C };

std::string to_string(Mode mode);
/// Accepts "H", "H_AI", "C" and the game's "A", "B".
Mode mode_from_string(const std::string& text);

struct ComplementaritySample {
  std::string participant;
  std::string scenario;
  Mode mode = Mode::H;
  double reward = 0.0;
  friend bool operator==(const ComplementaritySample&, const ComplementaritySample&) = default;
};

/// Expected AI-alone performance per scenario (mean over repeated runs).
struct AIBenchmark {
  std::map<std::string, double> value;

  static AIBenchmark from_runs(const std::map<std::string, std::vector<double>>& runs);
  /// Throws ValidationError naming the scenario when absent.
  double at(const std::string& scenario) const;
};

/// Throws ValidationError if a (participant, scenario) pair repeats or a reward is not finite.
void validate_samples(const std::vector<ComplementaritySample>& samples);

/// mean_z [ mean H_AI(z) - max(mean H(z), f_AI(z)) ] over scenarios with H or H_AI samples.
double ce_population(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai);

/// a(i): mean H_AI reward of participant i; b(i): mean over i's H samples of max(f_H, f_AI).
struct EcdfPair {
  std::vector<double> a;
  std::vector<double> b;
};
EcdfPair ecdf_pair(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai);

/// mean(a) - mean(b).
double ce_individual_avg(const std::vector<ComplementaritySample>& samples, const AIBenchmark& ai);

ComplementaritySample sample_from_json(const Json& doc);
Json sample_to_json(const ComplementaritySample& sample);

}  // namespace invbench::stats

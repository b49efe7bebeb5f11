#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "invbench/common/json_util.hpp"
#include "invbench/stats/complementarity.hpp"

namespace invbench::stats {

/// Automated reference runs per scenario: "ai" is the LLM-only pipeline
/// (f_AI), "or" the OR policy. Either may be empty for the regressions.
struct AutomatedRuns {
  std::map<std::string, std::vector<double>> ai;
  std::map<std::string, std::vector<double>> orp;
};

/// {"ai": {scenario: [rewards...]}, "or": {scenario: [rewards...]}}
AutomatedRuns load_automated_runs(const std::filesystem::path& path);
AutomatedRuns automated_runs_from_json(const Json& doc);

/// JSON lines; lines with "record": "sample" or without a "record" key are samples.
std::vector<ComplementaritySample> load_samples(const std::filesystem::path& path);
std::vector<ComplementaritySample> samples_from_jsonl(const std::vector<Json>& lines);

struct AnalysisOptions {
  int replicates = 10000;
  std::uint64_t seed = 42;
  std::vector<double> deltas{0.0};
  double ci_level = 0.95;
  std::string baseline_instance;  // empty: smallest scenario id
  std::size_t parallelism = 1;
};

/// Every estimate in one document: per-cell means, CE and average CE_i with
/// bootstrap p-values and CIs, the KS lower bound per delta with CI, the
/// subject/instance fixed-effects mode regression with the C - B contrast,
/// and the indicator regressions of Mode B against the AI runs and Mode A
/// against the OR runs.
Json analyze(const std::vector<ComplementaritySample>& samples, const AutomatedRuns& runs,
             const AnalysisOptions& options = {});

}  // namespace invbench::stats

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "invbench/policy/agent.hpp"
#include "invbench/sim/metrics.hpp"

namespace invbench::eval {

class RecordStore;

struct ResultRecord {
  std::string instance_id;
  std::string method;        // agent label
  std::string family;        // synthetic | real | custom
  std::string pattern;
  std::string variant;
  std::string lead;          // lead-time config label
  std::string cost;          // "4:1"
  double rho = 0.5;
  double normalized_reward = 0.0;
  double total_reward = 0.0;
  double implicit_fractile = 0.0;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;
  bool ok = true;
  std::string error;         // failed episodes only
  int periods_completed = 0;
  int fallbacks = 0;
  int llm_calls = 0;

  friend bool operator==(const ResultRecord&, const ResultRecord&) = default;
};

struct EpisodeResult {
  sim::Trajectory trajectory;
  ResultRecord record;
};

/// observe -> decide -> step for every period, threading one InsightStore.
/// An agent failure yields ok = false with the partial trajectory kept.
EpisodeResult run_episode(const sim::Instance& instance, const policy::Agent& agent, std::uint64_t seed = 0);

struct RunOptions {
  std::size_t parallelism = 1;
  /// Failure fraction above which the run counts as failed (CLI exit code 3).
  double max_failure_fraction = 0.0;
  RecordStore* store = nullptr;  // resume from and append to
  std::function<void(std::size_t done, std::size_t total)> progress;
  std::uint64_t seed = 0;
  /// Wall-clock timings make stores differ between identical runs; off by default.
  bool record_timing = false;
};

struct RunSummary {
  std::vector<ResultRecord> records;  // instance-major, agent-minor order
  std::size_t failures = 0;
  std::size_t resumed = 0;
  bool over_threshold = false;
};

/// Runs every (instance, agent) pair. Record order and content do not depend on parallelism.
RunSummary run_benchmark(const std::vector<sim::Instance>& instances, const std::vector<policy::Agent>& agents,
                         const RunOptions& options = {});

/// Facet fields filled from the instance; metrics left untouched.
ResultRecord record_skeleton(const sim::Instance& instance, const std::string& method);

}  // namespace invbench::eval

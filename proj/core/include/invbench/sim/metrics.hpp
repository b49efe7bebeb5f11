#pragma once

#include <span>
#include <string>
#include <vector>

#include "invbench/sim/simulator.hpp"

namespace invbench::sim {

struct PeriodRecord {
  double action = 0.0;
  PeriodOutcome outcome;
  std::string rationale;        // optional agent metadata
  double latency_ms = 0.0;

  friend bool operator==(const PeriodRecord&, const PeriodRecord&) = default;
};

struct Trajectory {
  std::string instance_id;
  std::vector<PeriodRecord> periods;
  double total_reward = 0.0;

  std::vector<double> actions() const;
  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// Re-simulates an action list from scratch.
Trajectory replay(const Instance& instance, std::span<const double> actions);

/// max(total / (p * sum d), 0); 0 when sum d == 0. Throws ValidationError if
/// the trajectory does not cover the full horizon.
double normalized_reward(const Trajectory& trajectory, const Instance& instance);

/// Fraction of periods ending with strictly positive inventory.
double implicit_critical_fractile(const Trajectory& trajectory);

/// One JSON object per period, newline-terminated.
std::string trajectory_to_jsonl(const Trajectory& trajectory);

}  // namespace invbench::sim

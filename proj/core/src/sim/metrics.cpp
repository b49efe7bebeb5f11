#include "invbench/sim/metrics.hpp"

#include <algorithm>
#include <numeric>

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"

namespace invbench::sim {

std::vector<double> Trajectory::actions() const {
  std::vector<double> out;
  out.reserve(periods.size());
  for (const auto& p : periods) out.push_back(p.action);
  return out;
}

Trajectory replay(const Instance& instance, std::span<const double> actions) {
  SimState state = new_session(instance);
  Trajectory traj;
  traj.instance_id = instance.id;
  for (double q : actions) {
    PeriodRecord rec;
    rec.action = q;
    rec.outcome = step(state, instance, q);
    traj.total_reward += rec.outcome.reward;
    traj.periods.push_back(std::move(rec));
  }
  return traj;
}

double normalized_reward(const Trajectory& trajectory, const Instance& instance) {
  if (static_cast<int>(trajectory.periods.size()) != instance.horizon())
    throw ValidationError("trajectory", "incomplete: " + std::to_string(trajectory.periods.size()) + " of " +
                                            std::to_string(instance.horizon()) + " periods");
  const double total_demand =
      std::accumulate(instance.demands.begin(), instance.demands.end(), 0.0,
                      [](double acc, std::int64_t d) { return acc + static_cast<double>(d); });
  if (total_demand <= 0.0) return 0.0;
  return std::max(trajectory.total_reward / (instance.profit * total_demand), 0.0);
}

double implicit_critical_fractile(const Trajectory& trajectory) {
  if (trajectory.periods.empty()) throw ValidationError("trajectory", "empty");
  const auto excess = std::count_if(trajectory.periods.begin(), trajectory.periods.end(),
                                    [](const PeriodRecord& r) { return r.outcome.ending_inventory > 0.0; });
  return static_cast<double>(excess) / static_cast<double>(trajectory.periods.size());
}

std::string trajectory_to_jsonl(const Trajectory& trajectory) {
  std::string out;
  for (const auto& r : trajectory.periods) {
    Json row = {{"instance_id", trajectory.instance_id},
                {"period", r.outcome.period},
                {"action", r.action},
                {"arrivals", r.outcome.arrivals},
                {"demand", r.outcome.demand},
                {"sales", r.outcome.sales},
                {"ending_inventory", r.outcome.ending_inventory},
                {"reward", r.outcome.reward},
                {"conclude_message", r.outcome.conclude_message}};
    if (!r.rationale.empty()) row["rationale"] = r.rationale;
    if (r.latency_ms > 0.0) row["latency_ms"] = r.latency_ms;
    out += row.dump();
    out += '\n';
  }
  return out;
}

}  // namespace invbench::sim

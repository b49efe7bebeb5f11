#include "invbench/eval/runner.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "invbench/common/error.hpp"
#include "invbench/eval/record_store.hpp"
#include "invbench/instances/benchmark.hpp"

namespace invbench::eval {

ResultRecord record_skeleton(const sim::Instance& in, const std::string& method) {
  ResultRecord r;
  r.instance_id = in.id;
  r.method = method;
  r.family = sim::to_string(in.provenance.family);
  r.pattern = in.provenance.pattern;
  r.variant = in.provenance.variant;
  r.lead = in.provenance.lead_config;
  r.cost = in.provenance.cost_config;
  r.rho = in.critical_fractile();
  return r;
}

EpisodeResult run_episode(const sim::Instance& instance, const policy::Agent& agent, std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  EpisodeResult out;
  out.record = record_skeleton(instance, agent.config().display_label());
  out.record.seed = seed;
  out.trajectory.instance_id = instance.id;

  sim::SimState state = sim::new_session(instance);
  policy::InsightStore insights;
  try {
    while (!sim::finished(state, instance)) {
      const auto obs = sim::observe(state, instance);
      const auto turn = agent.decide(obs, insights);
      out.record.fallbacks += turn.fell_back ? 1 : 0;
      out.record.llm_calls += turn.calls;
      sim::PeriodRecord rec;
      rec.action = turn.decision.quantity;
      rec.outcome = sim::step(state, instance, turn.decision.quantity);
      rec.rationale = turn.decision.short_rationale_for_human;
      rec.latency_ms = turn.latency_ms;
      out.trajectory.total_reward += rec.outcome.reward;
      out.trajectory.periods.push_back(std::move(rec));
    }
    out.record.normalized_reward = sim::normalized_reward(out.trajectory, instance);
    out.record.implicit_fractile = sim::implicit_critical_fractile(out.trajectory);
    out.record.total_reward = out.trajectory.total_reward;
  } catch (const std::exception& e) {
    out.record.ok = false;
    out.record.error = e.what();
    out.record.total_reward = out.trajectory.total_reward;
  }
  out.record.periods_completed = static_cast<int>(out.trajectory.periods.size());
  out.record.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunSummary run_benchmark(const std::vector<sim::Instance>& instances, const std::vector<policy::Agent>& agents,
                         const RunOptions& options) {
  if (instances.empty()) throw ValidationError("instances", "nothing to run");
  if (agents.empty()) throw ValidationError("agents", "at least one agent is required");

  const std::size_t total = instances.size() * agents.size();
  RunSummary summary;
  summary.records.resize(total);
  std::vector<char> pending(total, 1);
  if (options.store) {
    for (std::size_t k = 0; k < total; ++k) {
      const auto& in = instances[k / agents.size()];
      const auto& agent = agents[k % agents.size()];
      if (auto prior = options.store->find(in.id, agent.config().display_label())) {
        summary.records[k] = *prior;
        pending[k] = 0;
        ++summary.resumed;
      }
    }
  }

  std::atomic<std::size_t> next{0}, done{summary.resumed};
  std::mutex progress_mutex;
  // Appends happen in index order so the store does not depend on thread timing.
  std::mutex store_mutex;
  std::vector<char> finished(total, 0);
  std::size_t write_cursor = 0;
  auto flush_in_order = [&](std::size_t k) {
    std::lock_guard lock(store_mutex);
    finished[k] = 1;
    while (write_cursor < total && (finished[write_cursor] || !pending[write_cursor])) {
      if (pending[write_cursor]) options.store->append(summary.records[write_cursor]);
      ++write_cursor;
    }
  };
  auto worker = [&] {
    for (std::size_t k = next++; k < total; k = next++) {
      if (!pending[k]) continue;
      const auto& in = instances[k / agents.size()];
      const auto& agent = agents[k % agents.size()];
      summary.records[k] = run_episode(in, agent, options.seed).record;
      if (!options.record_timing) summary.records[k].elapsed_ms = 0.0;
      if (options.store) flush_in_order(k);
      const auto d = ++done;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(d, total);
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.parallelism, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  for (const auto& r : summary.records) summary.failures += r.ok ? 0 : 1;
  summary.over_threshold =
      static_cast<double>(summary.failures) > options.max_failure_fraction * static_cast<double>(total);
  return summary;
}

}  // namespace invbench::eval

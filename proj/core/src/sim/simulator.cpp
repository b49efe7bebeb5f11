#include "invbench/sim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"

namespace invbench::sim {
namespace {

std::string units(double x) {
  if (x == std::floor(x) && std::fabs(x) < 1e15) return format_fixed(x, 0);
  return format_fixed(x, 2);
}

}  // namespace

SimState new_session(const Instance& instance) {
  instance.validate();
  return SimState{};
}

bool finished(const SimState& state, const Instance& instance) {
  return state.period > instance.horizon();
}

Observation observe(const SimState& state, const Instance& instance) {
  if (finished(state, instance))
    throw EpisodeFinished("episode " + instance.id + " finished after period " +
                          std::to_string(instance.horizon()));
  Observation obs;
  obs.item_id = instance.id;
  obs.period = state.period;
  obs.horizon = instance.horizon();
  obs.on_hand = state.on_hand;
  obs.orders.reserve(state.orders.size());
  for (const auto& o : state.orders) {
    obs.orders.push_back({o.placed, o.quantity, o.arrival});
    if (!o.arrival) obs.in_transit += o.quantity;
  }
  obs.demand_history.reserve(instance.history.size() + static_cast<std::size_t>(state.period - 1));
  for (auto d : instance.history) obs.demand_history.push_back(static_cast<double>(d));
  for (int t = 1; t < state.period; ++t)
    obs.demand_history.push_back(static_cast<double>(instance.demands[static_cast<std::size_t>(t - 1)]));
  obs.last_conclude = state.last_conclude;
  obs.context = instance.contexts[static_cast<std::size_t>(state.period - 1)];
  obs.product_description = instance.product_description;
  obs.profit = instance.profit;
  obs.holding = instance.holding;
  obs.promised_lead = instance.promised_lead;
  return obs;
}

PeriodOutcome step(SimState& state, const Instance& instance, double quantity) {
  if (finished(state, instance))
    throw EpisodeFinished("episode " + instance.id + " finished after period " +
                          std::to_string(instance.horizon()));
  if (!std::isfinite(quantity) || quantity < 0.0)
    throw DomainError("order quantity must be finite and non-negative, got " + std::to_string(quantity));

  const int t = state.period;
  const auto idx = static_cast<std::size_t>(t - 1);
  state.orders.push_back({t, quantity, std::nullopt});

  // Arrivals: every order placed at tau with tau + l_tau == t, including the
  // order just placed when its lead time is zero.
  double arrivals = 0.0;
  std::vector<Order> arrived_now;
  for (auto& o : state.orders) {
    if (o.arrival) continue;
    const LeadTime& lead = instance.lead_times[static_cast<std::size_t>(o.placed - 1)];
    if (lead.is_lost()) continue;
    if (o.placed + lead.periods() == t) {
      o.arrival = t;
      arrivals += o.quantity;
      arrived_now.push_back(o);
    }
  }

  PeriodOutcome out;
  out.period = t;
  out.arrivals = arrivals;
  out.demand = static_cast<double>(instance.demands[idx]);
  const double available = state.on_hand + arrivals;
  out.sales = std::min(out.demand, available);
  out.ending_inventory = available - out.sales;
  out.reward = instance.profit * out.sales - instance.holding * out.ending_inventory;
  out.conclude_message = conclude_message(out, arrived_now);

  state.on_hand = out.ending_inventory;
  state.cumulative_reward += out.reward;
  state.last_conclude = out.conclude_message;
  ++state.period;
  return out;
}

std::string conclude_message(const PeriodOutcome& o, const std::vector<Order>& arrived_now) {
  std::string msg = "Period " + std::to_string(o.period) + " conclude: arrivals " + units(o.arrivals) + " units";
  if (!arrived_now.empty()) {
    msg += " (";
    for (std::size_t i = 0; i < arrived_now.size(); ++i) {
      if (i) msg += ", ";
      msg += units(arrived_now[i].quantity) + " ordered in period " + std::to_string(arrived_now[i].placed);
    }
    msg += ")";
  }
  msg += "; demand " + units(o.demand) + "; sold " + units(o.sales) + "; ending inventory " +
         units(o.ending_inventory) + "; period reward " + format_fixed(o.reward, 2) + ".";
  return msg;
}

}  // namespace invbench::sim

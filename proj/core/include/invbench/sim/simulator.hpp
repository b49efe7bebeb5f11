#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "invbench/sim/instance.hpp"

namespace invbench::sim {

/// An order in the book. `arrival` is set once the order has been received;
/// it stays empty forever for lost orders.
struct Order {
  int placed = 0;
  double quantity = 0.0;
  std::optional<int> arrival;

  friend bool operator==(const Order&, const Order&) = default;
};

/// Conclusion of one period.
struct PeriodOutcome {
  int period = 0;
  double arrivals = 0.0;          // A_t
  double demand = 0.0;            // d_t
  double sales = 0.0;             // s_t = min(d_t, I_t + A_t)
  double ending_inventory = 0.0;  // I_{t+1}
  double reward = 0.0;            // p s_t - h I_{t+1}
  std::string conclude_message;

  friend bool operator==(const PeriodOutcome&, const PeriodOutcome&) = default;
};

/// Live environment state. Fully determined by the instance and the actions
/// taken so far; holds no randomness.
struct SimState {
  int period = 1;              // t, 1-based; period == T+1 once finished
  double on_hand = 0.0;        // I_t
  std::vector<Order> orders;   // every order placed so far, in period order
  double cumulative_reward = 0.0;
  std::optional<std::string> last_conclude;

  friend bool operator==(const SimState&, const SimState&) = default;
};

/// An order as the decision maker sees it: realized lead times of orders
/// that have not arrived are hidden.
struct OrderView {
  int placed = 0;
  double quantity = 0.0;
  std::optional<int> arrived_period;
};

struct Observation {
  std::string item_id;
  int period = 1;
  int horizon = 0;
  double on_hand = 0.0;
  std::vector<OrderView> orders;
  double in_transit = 0.0;            // all unarrived orders, lost ones included
  std::vector<double> demand_history; // d_{-4}..d_{t-1}
  std::optional<std::string> last_conclude;
  std::string context;                // x_t
  std::string product_description;
  double profit = 1.0;
  double holding = 1.0;
  int promised_lead = 0;

  double critical_fractile() const { return profit / (profit + holding); }
  double inventory_position() const { return on_hand + in_transit; }
};

SimState new_session(const Instance& instance);

/// Throws EpisodeFinished when the horizon is exhausted.
Observation observe(const SimState& state, const Instance& instance);

/// Places order `quantity` for the current period, resolves arrivals and
/// demand, and advances the state. Throws DomainError for a negative or
/// non-finite quantity and EpisodeFinished past the horizon.
PeriodOutcome step(SimState& state, const Instance& instance, double quantity);

bool finished(const SimState& state, const Instance& instance);

/// "Period t conclude: ..." line shown to the agent in period t+1.
std::string conclude_message(const PeriodOutcome& outcome, const std::vector<Order>& arrived_now);

}  // namespace invbench::sim

#include "invbench/policy/prompts.hpp"

#include <cmath>
#include <sstream>

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"

namespace invbench::policy {
namespace {

std::string num(double x) {
  if (std::fabs(x - std::round(x)) < 1e-9) return format_fixed(std::round(x), 0);
  return format_fixed(x, 2);
}

std::string output_contract(Method method, const std::string& item) {
  std::ostringstream o;
  o << "Output format: reply with a single JSON object and nothing else.\n";
  o << "  \"rationale\": your step-by-step analysis\n";
  o << "  \"short_rationale_for_human\": a summary of one to three sentences\n";
  o << "  \"carry_over_insight\": a new sustained discovery, or \"\"\n";
  if (method == Method::LLM_TO_OR) {
    o << "  \"parameters\": {\"lead_time\": L, \"mean_demand_over_horizon\": mu, "
         "\"std_demand_over_horizon\": sigma}\n";
    o << "Supply lead_time alone to keep the default estimates scaled to that lead time, or supply "
         "mean_demand_over_horizon and std_demand_over_horizon to replace them (lead_time is then context only). "
         "Omit a key to keep its default. Do not return an order quantity; the policy computes it.\n";
  } else {
    o << "  \"action\": {\"" << item << "\": quantity}\n";
    o << "The quantity must be a non-negative number.\n";
  }
  return o.str();
}

}  // namespace

std::string build_system_prompt(Method method, const sim::Observation& obs, const PromptOptions& options) {
  if (method == Method::OR) throw ValidationError("method", "the OR method does not use prompts");
  const std::string& item = obs.item_id;
  const bool sees_or = method == Method::OR_TO_LLM;
  std::ostringstream o;

  o << "You decide how many units to order for the single SKU \"" << item << "\"";
  if (sees_or) o << ", with an OR baseline policy offering a recommendation each period";
  o << ". Every period earns profit * units_sold - holding_cost * ending_inventory; maximize the total over all "
    << obs.horizon << " periods.\n";
  o << "Profit per unit sold: " << num(obs.profit) << ". Holding cost per unit left at period end: "
    << num(obs.holding) << ".\n";
  if (!obs.product_description.empty()) o << "Product: " << obs.product_description << "\n";
  o << "\n";

  o << "Order of events in period N:\n";
  o << "1. Decision: you read the observation and place the order for period N.\n";
  o << "2. Arrivals: shipments due in period N are added to on-hand inventory.\n";
  o << "3. Demand: customers buy from on-hand inventory; unmet demand is lost, but the full demand is reported.\n";
  o << "4. Conclusion: a \"Period N conclude\" message summarizes the period and is shown to you in period N+1.\n";
  o << "Steps 2 to 4 happen after your decision. There is always a 1-period observation delay.\n\n";

  o << "Lead time: the promised lead time is " << obs.promised_lead << " period(s). An order placed in period N is due "
    << "in the arrival step of period N+L, appears in the \"Period N+L conclude\" message, and you read it at the start "
    << "of period N+L+1. Real lead times can differ from the promise, and an order can be lost and never arrive.\n\n";

  if (sees_or) {
    o << "How the OR baseline works (capped base-stock):\n";
    o << "1. From all observed demands x_1..x_n: mean m = sum(x_i)/n, std s = sqrt(sum((x_i - m)^2)/(n-1)).\n";
    o << "   Over the lead-time horizon: mu = (1+L)*m, sigma = sqrt(1+L)*s.\n";
    o << "2. Fractile rho = p/(p+h) and safety factor z = Phi^-1(rho).\n";
    o << "3. Base stock B = mu + z*sigma.\n";
    o << "4. Order q = max(0, min(B - IP, cap)) with cap = mu/(1+L) + Phi^-1(0.95)*sigma/sqrt(1+L), where IP is "
         "on-hand plus every order not yet received.\n";
    o << "5. Limitations: it trusts the promised lead time, weights all history equally, assumes independent "
         "identically distributed demand, and cannot detect lost orders or regime shifts.\n";
    o << "Treat the recommendation as a baseline. Depart from it when the evidence shows lead times differ from the "
         "promise, orders were lost, demand has shifted, or the calendar and product suggest seasonality.\n\n";
  } else if (method == Method::LLM_TO_OR) {
    o << "Your estimates feed a capped base-stock policy. With horizon mean mu and std sigma over the lead time L:\n";
    o << "B = mu + Phi^-1(p/(p+h))*sigma; order q = max(0, min(B - IP, mu/(1+L) + Phi^-1(0.95)*sigma/sqrt(1+L))),\n";
    o << "where IP is on-hand plus every order not yet received. By default L is the promised lead time, "
         "mu = (1+L)*m and sigma = sqrt(1+L)*s, with m and s the mean and (n-1) std of all observed demands.\n\n";
  }

  o << "Checklist for each decision:\n";
  o << "1. Judge the demand outlook from the history, the dates and the product description.\n";
  o << "2. Reconcile on-hand and pipeline stock against expected arrivals; flag overdue or lost shipments.\n";
  if (sees_or)
    o << "3. Examine the OR recommendation and its statistics and decide how to adjust it.\n";
  else if (method == Method::LLM_TO_OR)
    o << "3. Decide which parameters the defaults get wrong (lead time, level, variability).\n";
  else
    o << "3. Size the order against your demand and lead-time beliefs.\n";
  o << "4. Explain the final answer in terms of demand outlook, lead-time belief"
    << (sees_or ? " and the OR baseline" : "") << ".\n\n";

  o << "Carry-over insights: record only new, evidence-backed findings about lasting changes (demand level or "
       "spread, lead time, seasonality), with concrete numbers. Be conservative. To drop or rewrite stored "
       "insights, return carry_over_insight as a JSON array holding the complete list to keep.\n\n";

  o << output_contract(method, item);

  if (options.human_mode == HumanMode::B && options.two_stage_feedback) {
    o << "\nA human makes the final decision. First give your proposal. If the human then replies with feedback, "
         "take it into account and answer again in the same format with a revised action.\n";
  }
  if (options.human_mode == HumanMode::C) {
    o << "\nA human supervisor may give strategic guidance; it appears at the top of the observation. Follow it "
         "unless it conflicts with the mechanics above.\n";
  }
  return o.str();
}

std::string build_user_message(const PromptInput& in) {
  if (in.observation == nullptr) throw ValidationError("observation", "required");
  const auto& obs = *in.observation;
  std::ostringstream o;

  if (in.guidance && !in.guidance->empty()) {
    o << "=== Guidance from your supervisor ===\n" << *in.guidance << "\n\n";
  }

  o << "=== Carry-over insights ===\n";
  o << (in.insights ? in.insights->render() : std::string("(none)\n")) << "\n";

  o << "=== Observation: period " << obs.period << " of " << obs.horizon << " ===\n";
  if (!obs.context.empty()) o << "Context: " << obs.context << "\n";
  o << "On-hand inventory: " << num(obs.on_hand) << "\n";
  o << "In transit (ordered, not yet received): " << num(obs.in_transit) << "\n";
  o << "Orders placed:";
  if (obs.orders.empty()) o << " none";
  o << "\n";
  for (const auto& ord : obs.orders) {
    o << "- period " << ord.placed << ": " << num(ord.quantity) << " units, ";
    if (ord.arrived_period)
      o << "received in period " << *ord.arrived_period;
    else
      o << "not yet received";
    o << "\n";
  }
  o << "Demand history (period: units):";
  const int first = -static_cast<int>(sim::kHistoryLength) + 1;
  for (std::size_t i = 0; i < obs.demand_history.size(); ++i)
    o << (i ? ", " : " ") << (first + static_cast<int>(i)) << ": " << num(obs.demand_history[i]);
  o << "\n";
  o << "Previous period: " << (obs.last_conclude ? *obs.last_conclude : std::string("none (first period)")) << "\n";

  if (in.method == Method::OR_TO_LLM && in.advice) {
    const auto& a = *in.advice;
    o << "\n=== OR recommendation ===\n";
    o << "Recommended order: " << num(a.quantity) << "\n";
    o << "Base-stock level B: " << format_fixed(a.base_stock, 2) << "\n";
    o << "Inventory position IP: " << num(a.inventory_position) << "\n";
    o << "Demand mean m: " << format_fixed(a.mean_demand, 2) << ", std s: " << format_fixed(a.std_demand, 2) << "\n";
    o << "Horizon mu: " << format_fixed(a.horizon_mean, 2) << ", sigma: " << format_fixed(a.horizon_std, 2)
      << " (L = " << num(a.lead_time) << ")\n";
    o << "Safety factor z: " << format_fixed(a.z, 4) << " (rho = " << format_fixed(a.fractile, 4) << ")\n";
    o << "Order cap: " << format_fixed(a.cap, 2) << "\n";
  } else if (in.method == Method::LLM_TO_OR && in.advice) {
    const auto& a = *in.advice;
    o << "\n=== Default policy inputs ===\n";
    o << "Promised lead time L: " << obs.promised_lead << "\n";
    o << "Demand mean m: " << format_fixed(a.mean_demand, 2) << ", std s: " << format_fixed(a.std_demand, 2) << "\n";
    o << "Default mu: " << format_fixed(a.horizon_mean, 2) << ", sigma: " << format_fixed(a.horizon_std, 2) << "\n";
    o << "Inventory position IP: " << num(a.inventory_position) << "\n";
  }

  if (in.human_feedback) {
    o << "\n=== Human feedback on your proposal";
    if (in.initial_proposal) o << " of " << num(*in.initial_proposal) << " units";
    o << " ===\n" << *in.human_feedback << "\n";
  }
  return o.str();
}

Prompt build_prompts(const PromptInput& input) {
  if (input.observation == nullptr) throw ValidationError("observation", "required");
  return {build_system_prompt(input.method, *input.observation, input.options), build_user_message(input)};
}

std::string reprompt_note(const std::string& error) {
  return "\n=== Format problem ===\nYour previous reply could not be used (" + error +
         "). Answer again with exactly one JSON object in the required format.\n";
}

}  // namespace invbench::policy

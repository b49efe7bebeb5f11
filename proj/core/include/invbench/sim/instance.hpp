#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace invbench::sim {

inline constexpr std::size_t kHistoryLength = 5;

/// Realized lead time of an order: a non-negative number of periods, or
/// lost (the order never arrives).
class LeadTime {
 public:
  constexpr LeadTime() = default;
  static constexpr LeadTime fixed(int periods) { return LeadTime(periods); }
  static constexpr LeadTime lost() { return LeadTime(); }

  constexpr bool is_lost() const { return !periods_.has_value(); }
  /// Precondition: !is_lost().
  constexpr int periods() const { return *periods_; }

  friend constexpr bool operator==(const LeadTime&, const LeadTime&) = default;

 private:
  constexpr explicit LeadTime(int periods) : periods_(periods) {}
  std::optional<int> periods_;
};

enum class Family { Synthetic, Real, Custom };

/// Where an instance came from; also the source of reporting facets.
struct Provenance {
  Family family = Family::Custom;
  std::string pattern;       // "p01".."p10" for synthetic
  std::string variant;       // "v1".."v4"
  int realization = 0;       // 1-based
  std::string article;       // real article id
  std::string lead_config;   // "L0", "L4", "LS", "L1", "LS75", ...
  std::string cost_config;   // "1:1", "4:1", "19:1"

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Fully resolved episode specification. All randomness is pre-drawn.
struct Instance {
  std::string id;
  std::vector<std::int64_t> demands;   // d_1..d_T
  std::vector<std::int64_t> history;   // d_{-4}..d_0
  std::vector<LeadTime> lead_times;    // lead time of the order placed in period t
  int promised_lead = 0;               // anticipated lead time L shown to the agent
  double profit = 1.0;                 // p
  double holding = 1.0;                // h
  std::vector<std::string> contexts;   // x_t, free-form
  std::string product_description;
  Provenance provenance;

  int horizon() const { return static_cast<int>(demands.size()); }
  double critical_fractile() const { return profit / (profit + holding); }

  /// Throws ValidationError naming the offending field.
  void validate() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

std::string to_string(Family family);
Family family_from_string(const std::string& text);

}  // namespace invbench::sim

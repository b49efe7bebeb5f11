#include "invbench/eval/aggregate.hpp"

#include <cmath>
#include <map>

#include "invbench/common/error.hpp"
#include "invbench/instances/benchmark.hpp"

namespace invbench::eval {

std::string to_string(Facet facet) {
  switch (facet) {
    case Facet::Method: return "method";
    case Facet::Family: return "family";
    case Facet::Pattern: return "pattern";
    case Facet::Variant: return "variant";
    case Facet::Lead: return "lead";
    case Facet::Rho: return "rho";
  }
  return "method";
}

Facet facet_from_string(const std::string& text) {
  for (Facet f : {Facet::Method, Facet::Family, Facet::Pattern, Facet::Variant, Facet::Lead, Facet::Rho})
    if (to_string(f) == text) return f;
  throw ValidationError("group_by", "unknown facet '" + text + "'");
}

std::string facet_value(const ResultRecord& r, Facet facet) {
  switch (facet) {
    case Facet::Method: return r.method;
    case Facet::Family: return r.family;
    case Facet::Pattern: return r.pattern;
    case Facet::Variant: return r.variant;
    case Facet::Lead: return r.lead;
    case Facet::Rho: return instances::fractile_label(r.rho);
  }
  return {};
}

CellStats mean_ci(const std::vector<double>& values) {
  CellStats s;
  s.n = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.half_width = 1.96 * std::sqrt(ss / static_cast<double>(s.n - 1)) / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

std::vector<AggregateCell> aggregate(const std::vector<ResultRecord>& records, const std::vector<Facet>& facets,
                                     std::vector<std::string>* warnings) {
  struct Acc {
    std::vector<double> rewards;
    double fractile_sum = 0.0;
    std::size_t failures = 0;
  };
  std::map<std::vector<std::string>, Acc> groups;
  for (const auto& r : records) {
    std::vector<std::string> key;
    for (Facet f : facets) key.push_back(facet_value(r, f));
    auto& acc = groups[key];
    if (!r.ok) {
      ++acc.failures;
      continue;
    }
    acc.rewards.push_back(r.normalized_reward);
    acc.fractile_sum += r.implicit_fractile;
  }
  std::vector<AggregateCell> cells;
  for (const auto& [key, acc] : groups) {
    if (acc.rewards.empty()) {
      if (warnings) {
        std::string k;
        for (const auto& part : key) k += (k.empty() ? "" : "/") + part;
        warnings->push_back("cell " + k + " has no successful episodes (" + std::to_string(acc.failures) +
                            " failures); omitted");
      }
      continue;
    }
    const auto s = mean_ci(acc.rewards);
    cells.push_back({key, s.n, s.mean, s.half_width, acc.fractile_sum / static_cast<double>(s.n), acc.failures});
  }
  return cells;
}

}  // namespace invbench::eval

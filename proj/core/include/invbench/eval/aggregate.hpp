#pragma once

#include <string>
#include <vector>

#include "invbench/eval/runner.hpp"

namespace invbench::eval {

enum class Facet { Method, Family, Pattern, Variant, Lead, Rho };

std::string to_string(Facet facet);
/// "method", "family", "pattern", "variant", "lead", "rho". Throws ValidationError.
Facet facet_from_string(const std::string& text);
std::string facet_value(const ResultRecord& record, Facet facet);

struct AggregateCell {
  std::vector<std::string> key;  // one value per requested facet
  std::size_t n = 0;             // successful episodes
  double mean = 0.0;             // normalized reward
  double half_width = 0.0;       // 1.96 * sample std / sqrt(n); 0 when n == 1
  double mean_fractile = 0.0;    // implicit critical fractile
  std::size_t failures = 0;      // excluded from the statistics above

  friend bool operator==(const AggregateCell&, const AggregateCell&) = default;
};

struct CellStats {
  std::size_t n = 0;
  double mean = 0.0;
  double half_width = 0.0;
};
CellStats mean_ci(const std::vector<double>& values);

/// Cells sorted by key. Cells with failures only are dropped and noted in `warnings`.
std::vector<AggregateCell> aggregate(const std::vector<ResultRecord>& records, const std::vector<Facet>& facets,
                                     std::vector<std::string>* warnings = nullptr);

}  // namespace invbench::eval

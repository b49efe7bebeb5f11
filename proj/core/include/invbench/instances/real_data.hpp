#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "invbench/instances/csv.hpp"
#include "invbench/sim/instance.hpp"

namespace invbench::instances {

// Input schemas.
//
// Weekly sales CSV (one row per article and week; missing weeks mean zero sales):
//   article_id, week_start (YYYY-MM-DD), units, avg_price
// Article metadata CSV:
//   article_id, prod_name, product_type_name, colour_group_name,
//   garment_group_name, detail_desc

struct RealArticleSeries {
  std::string article;
  std::vector<std::int64_t> weekly_sales;  // one entry per week
  std::vector<std::string> week_starts;
  std::string description;                 // rendered from metadata
  double price_ratio = 1.0;                // after outlier-week exclusion
  std::int64_t total_volume = 0;
};

struct PreprocessOptions {
  int weeks = 52;
  int min_positive_weeks = 50;
  double max_price_ratio = 1.2;
  int max_excluded_weeks = 4;
  std::size_t top_k = 200;
};

struct PreprocessResult {
  std::vector<RealArticleSeries> series;  // ranked by total volume, descending
  std::size_t articles_seen = 0;
  std::size_t failed_positive_weeks = 0;
  std::size_t failed_price_stability = 0;
  std::vector<std::string> warnings;
};

/// Smallest max/min ratio reachable by dropping at most `max_excluded`
/// entries. Dropping k entries optimally means dropping some i of the lowest
/// and k - i of the highest values, so every split is enumerated.
double min_price_ratio_after_exclusion(std::span<const double> prices, int max_excluded);

/// Throws SchemaError for missing columns or a week count other than
/// `options.weeks`. Fewer than top_k survivors produce a warning.
PreprocessResult preprocess_real(const CsvTable& weekly_sales, const CsvTable& articles_meta,
                                 const PreprocessOptions& options = {});

struct RealInstanceOptions {
  std::uint64_t seed = 42;
  int history_weeks = 5;
};

/// Each article gets one cost config (balanced random assignment over
/// 1:1, 4:1, 19:1) and is crossed with the three benchmark lead-time configs.
std::vector<sim::Instance> build_real_instances(const std::vector<RealArticleSeries>& series,
                                                const RealInstanceOptions& options = {});

}  // namespace invbench::instances

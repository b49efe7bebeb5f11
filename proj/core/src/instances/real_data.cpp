#include "invbench/instances/real_data.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "invbench/common/error.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/instances/benchmark.hpp"

namespace invbench::instances {
namespace {

double parse_number(const std::string& text, const char* column, std::size_t row) {
  if (text.empty()) return std::nan("");
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw SchemaError(std::string("row ") + std::to_string(row + 2) + ": column " + column +
                      " is not numeric: '" + text + "'");
  }
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

struct ArticleWeeks {
  std::vector<double> units;
  std::vector<double> prices;
};

}  // namespace

double min_price_ratio_after_exclusion(std::span<const double> prices, int max_excluded) {
  std::vector<double> sorted(prices.begin(), prices.end());
  std::sort(sorted.begin(), sorted.end());
  const int n = static_cast<int>(sorted.size());
  const int k = std::min(max_excluded, std::max(n - 1, 0));
  if (n - k < 2) return 1.0;
  double best = INFINITY;
  for (int low = 0; low <= k; ++low) {
    const int high = k - low;
    best = std::min(best, sorted[static_cast<std::size_t>(n - 1 - high)] / sorted[static_cast<std::size_t>(low)]);
  }
  return best;
}

PreprocessResult preprocess_real(const CsvTable& sales, const CsvTable& meta, const PreprocessOptions& options) {
  const auto c_article = sales.column("article_id");
  const auto c_week = sales.column("week_start");
  const auto c_units = sales.column("units");
  const auto c_price = sales.column("avg_price");

  const auto m_article = meta.column("article_id");
  const auto m_name = meta.column("prod_name");
  const auto m_type = meta.column("product_type_name");
  const auto m_colour = meta.column("colour_group_name");
  const auto m_group = meta.column("garment_group_name");
  const auto m_detail = meta.column("detail_desc");

  std::set<std::string> week_set;
  for (const auto& row : sales.rows) week_set.insert(row[c_week]);
  if (static_cast<int>(week_set.size()) != options.weeks)
    throw SchemaError("expected " + std::to_string(options.weeks) + " distinct weeks, found " +
                      std::to_string(week_set.size()));
  const std::vector<std::string> weeks(week_set.begin(), week_set.end());
  std::map<std::string, std::size_t> week_index;
  for (std::size_t i = 0; i < weeks.size(); ++i) week_index[weeks[i]] = i;

  std::map<std::string, ArticleWeeks> articles;
  for (std::size_t r = 0; r < sales.rows.size(); ++r) {
    const auto& row = sales.rows[r];
    auto& a = articles[row[c_article]];
    if (a.units.empty()) {
      a.units.assign(weeks.size(), 0.0);
      a.prices.assign(weeks.size(), std::nan(""));
    }
    const auto w = week_index.at(row[c_week]);
    const double units = parse_number(row[c_units], "units", r);
    if (!(units >= 0.0)) throw SchemaError("row " + std::to_string(r + 2) + ": units must be non-negative");
    a.units[w] += units;
    a.prices[w] = parse_number(row[c_price], "avg_price", r);
  }

  std::map<std::string, std::string> descriptions;
  for (const auto& row : meta.rows) {
    descriptions[row[m_article]] = row[m_name] + " (" + row[m_type] + ", " + row[m_colour] + ", " + row[m_group] +
                                   "). " + row[m_detail];
  }

  PreprocessResult result;
  result.articles_seen = articles.size();
  for (const auto& [id, a] : articles) {
    const auto positive = std::count_if(a.units.begin(), a.units.end(), [](double u) { return u > 0.0; });
    if (positive < options.min_positive_weeks) {
      ++result.failed_positive_weeks;
      continue;
    }
    std::vector<double> prices;
    for (std::size_t w = 0; w < a.units.size(); ++w)
      if (a.units[w] > 0.0 && std::isfinite(a.prices[w]) && a.prices[w] > 0.0) prices.push_back(a.prices[w]);
    const double ratio = min_price_ratio_after_exclusion(prices, options.max_excluded_weeks);
    if (ratio > options.max_price_ratio) {
      ++result.failed_price_stability;
      continue;
    }
    RealArticleSeries s;
    s.article = id;
    s.week_starts = weeks;
    for (double u : a.units) s.weekly_sales.push_back(static_cast<std::int64_t>(std::llround(u)));
    s.total_volume = std::accumulate(s.weekly_sales.begin(), s.weekly_sales.end(), std::int64_t{0});
    s.price_ratio = ratio;
    const auto d = descriptions.find(id);
    if (d != descriptions.end()) {
      s.description = d->second;
    } else {
      s.description = "Article " + id + ".";
      result.warnings.push_back("no metadata for article " + id);
    }
    result.series.push_back(std::move(s));
  }

  std::stable_sort(result.series.begin(), result.series.end(), [](const auto& x, const auto& y) {
    if (x.total_volume != y.total_volume) return x.total_volume > y.total_volume;
    return x.article < y.article;
  });
  if (result.series.size() > options.top_k) {
    result.series.resize(options.top_k);
  } else if (result.series.size() < options.top_k) {
    result.warnings.push_back("only " + std::to_string(result.series.size()) + " articles passed the filters (wanted " +
                              std::to_string(options.top_k) + ")");
  }
  return result;
}

std::vector<sim::Instance> build_real_instances(const std::vector<RealArticleSeries>& series,
                                                const RealInstanceOptions& options) {
  const auto costs = benchmark_cost_configs();
  const auto leads = benchmark_lead_configs();

  // Balanced assignment: shuffle article order, then deal cost configs round-robin.
  std::vector<std::size_t> order(series.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(derive_seed(options.seed, {0xC057}));
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::size_t> cost_of(series.size());
  for (std::size_t k = 0; k < order.size(); ++k) cost_of[order[k]] = k % costs.size();

  std::vector<sim::Instance> out;
  out.reserve(series.size() * leads.size());
  for (std::size_t a = 0; a < series.size(); ++a) {
    const auto& s = series[a];
    const auto h = static_cast<std::size_t>(options.history_weeks);
    if (s.weekly_sales.size() <= h) throw ValidationError("weekly_sales", "article " + s.article + " too short");
    const CostConfig& cost = costs[cost_of[a]];
    for (std::size_t li = 0; li < leads.size(); ++li) {
      sim::Instance inst;
      inst.id = "real-" + s.article + "-rho" + fractile_label(cost.critical_fractile()) + "-" + leads[li].label;
      inst.history.assign(s.weekly_sales.begin(), s.weekly_sales.begin() + static_cast<std::ptrdiff_t>(h));
      inst.demands.assign(s.weekly_sales.begin() + static_cast<std::ptrdiff_t>(h), s.weekly_sales.end());
      for (std::size_t w = h; w < s.weekly_sales.size(); ++w)
        inst.contexts.push_back("Week starting " + (w < s.week_starts.size() ? s.week_starts[w] : std::string("?")) + ".");
      Rng lead_rng(derive_seed(options.seed, {0x1EAD, fnv1a(s.article), li}));
      inst.lead_times = leads[li].draw(inst.horizon(), lead_rng);
      inst.promised_lead = leads[li].promised;
      inst.profit = cost.profit;
      inst.holding = cost.holding;
      inst.product_description = s.description;
      inst.provenance.family = sim::Family::Real;
      inst.provenance.article = s.article;
      inst.provenance.lead_config = leads[li].label;
      inst.provenance.cost_config = cost.label;
      out.push_back(std::move(inst));
    }
  }
  return out;
}

}  // namespace invbench::instances

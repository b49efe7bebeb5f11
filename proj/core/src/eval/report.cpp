#include "invbench/eval/report.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "invbench/common/error.hpp"

namespace invbench::eval {
namespace {

bool deterministic_lead(const std::string& lead) { return lead == "L0" || lead == "L4"; }

std::vector<std::string> method_order(const std::vector<ResultRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records)
    if (std::find(out.begin(), out.end(), r.method) == out.end()) out.push_back(r.method);
  return out;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string fmt(double v) { return format_fixed(v, 3); }

}  // namespace

ReportFormat report_format_from_string(const std::string& text) {
  if (text == "json") return ReportFormat::Json;
  if (text == "csv") return ReportFormat::Csv;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  throw ValidationError("format", "expected json, csv or markdown, got '" + text + "'");
}

TableShape table_shape_from_string(const std::string& text) {
  if (text == "overall") return TableShape::Overall;
  if (text == "patterns" || text == "table2") return TableShape::Patterns;
  if (text == "leadtime") return TableShape::LeadTime;
  if (text == "fractile") return TableShape::Fractile;
  throw ValidationError("shape", "expected overall, patterns, leadtime or fractile, got '" + text + "'");
}

Table make_table(const std::vector<ResultRecord>& records, TableShape shape) {
  Table t;
  t.rows = method_order(records);
  // column label -> predicate, and the value extracted per record
  std::vector<std::pair<std::string, std::function<bool(const ResultRecord&)>>> cols;
  bool fractile_values = false;
  switch (shape) {
    case TableShape::Overall:
      t.title = "Normalized reward (deterministic lead times)";
      cols.push_back({"All Synthetic", [](const ResultRecord& r) { return r.family == "synthetic" && deterministic_lead(r.lead); }});
      cols.push_back({"Real", [](const ResultRecord& r) { return r.family == "real" && deterministic_lead(r.lead); }});
      break;
    case TableShape::Patterns:
      t.title = "Normalized reward by demand pattern (deterministic lead times)";
      for (int p = 1; p <= 10; ++p) {
        const std::string id = (p < 10 ? "p0" : "p") + std::to_string(p);
        cols.push_back({id, [id](const ResultRecord& r) {
                          return r.family == "synthetic" && r.pattern == id && deterministic_lead(r.lead);
                        }});
      }
      cols.push_back({"All Synthetic", [](const ResultRecord& r) { return r.family == "synthetic" && deterministic_lead(r.lead); }});
      cols.push_back({"Real", [](const ResultRecord& r) { return r.family == "real" && deterministic_lead(r.lead); }});
      break;
    case TableShape::LeadTime: {
      t.title = "Normalized reward by lead-time configuration";
      std::vector<std::pair<std::string, std::string>> seen;
      for (const auto& r : records) {
        std::pair<std::string, std::string> k{r.family, r.lead};
        if (std::find(seen.begin(), seen.end(), k) == seen.end()) seen.push_back(k);
      }
      for (const auto& [family, lead] : seen)
        cols.push_back({family + " " + lead, [family, lead](const ResultRecord& r) { return r.family == family && r.lead == lead; }});
      break;
    }
    case TableShape::Fractile:
      t.title = "Implicit critical fractile";
      fractile_values = true;
      for (const char* rho : {"0.50", "0.80", "0.95"}) {
        const std::string label = rho;
        cols.push_back({"rho=" + label, [label](const ResultRecord& r) { return facet_value(r, Facet::Rho) == label; }});
      }
      break;
  }
  for (const auto& c : cols) t.columns.push_back(c.first);
  for (const auto& method : t.rows) {
    std::vector<std::optional<TableCell>> row;
    for (const auto& c : cols) {
      std::vector<double> v;
      for (const auto& r : records)
        if (r.ok && r.method == method && c.second(r)) v.push_back(fractile_values ? r.implicit_fractile : r.normalized_reward);
      if (v.empty()) {
        row.emplace_back();
      } else {
        const auto s = mean_ci(v);
        row.push_back(TableCell{s.n, s.mean, s.half_width});
      }
    }
    t.cells.push_back(std::move(row));
  }
  return t;
}

Json table_to_json(const Table& t) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    Json cells = Json::array();
    for (const auto& c : t.cells[i]) {
      if (c)
        cells.push_back({{"n", c->n}, {"mean", c->mean}, {"half_width", c->half_width}});
      else
        cells.push_back(nullptr);
    }
    rows.push_back({{"label", t.rows[i]}, {"cells", cells}});
  }
  return {{"title", t.title}, {"columns", t.columns}, {"rows", rows}};
}

Table table_from_json(const Json& doc) {
  Table t;
  t.title = doc.at("title").get<std::string>();
  t.columns = doc.at("columns").get<std::vector<std::string>>();
  for (const auto& row : doc.at("rows")) {
    t.rows.push_back(row.at("label").get<std::string>());
    std::vector<std::optional<TableCell>> cells;
    for (const auto& c : row.at("cells")) {
      if (c.is_null())
        cells.emplace_back();
      else
        cells.push_back(TableCell{c.at("n").get<std::size_t>(), c.at("mean").get<double>(), c.at("half_width").get<double>()});
    }
    t.cells.push_back(std::move(cells));
  }
  return t;
}

std::string render_table(const Table& t, ReportFormat format) {
  std::ostringstream o;
  switch (format) {
    case ReportFormat::Json:
      return table_to_json(t).dump(2) + "\n";
    case ReportFormat::Csv:
      o << "method,column,n,mean,half_width\n";
      for (std::size_t i = 0; i < t.rows.size(); ++i)
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
          const auto& c = t.cells[i][j];
          o << csv_escape(t.rows[i]) << ',' << csv_escape(t.columns[j]) << ',';
          if (c)
            o << c->n << ',' << format_fixed(c->mean, 6) << ',' << format_fixed(c->half_width, 6);
          else
            o << "0,,";
          o << '\n';
        }
      return o.str();
    case ReportFormat::Markdown:
      o << "**" << t.title << "**\n\n| Method |";
      for (const auto& c : t.columns) o << ' ' << c << " |";
      o << "\n|---|";
      for (std::size_t j = 0; j < t.columns.size(); ++j) o << "---|";
      o << '\n';
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        o << "| " << t.rows[i] << " |";
        for (const auto& c : t.cells[i]) {
          if (c)
            o << ' ' << fmt(c->mean) << " ± " << fmt(c->half_width) << " |";
          else
            o << " - |";
        }
        o << '\n';
      }
      return o.str();
  }
  return {};
}

Json cells_to_json(const std::vector<AggregateCell>& cells, const std::vector<Facet>& facets) {
  Json names = Json::array();
  for (Facet f : facets) names.push_back(to_string(f));
  Json arr = Json::array();
  for (const auto& c : cells)
    arr.push_back({{"key", c.key},
                   {"n", c.n},
                   {"mean", c.mean},
                   {"half_width", c.half_width},
                   {"mean_fractile", c.mean_fractile},
                   {"failures", c.failures}});
  return {{"facets", names}, {"cells", arr}};
}

std::vector<AggregateCell> cells_from_json(const Json& doc) {
  std::vector<AggregateCell> out;
  for (const auto& c : doc.at("cells"))
    out.push_back({c.at("key").get<std::vector<std::string>>(), c.at("n").get<std::size_t>(), c.at("mean").get<double>(),
                   c.at("half_width").get<double>(), c.at("mean_fractile").get<double>(),
                   c.at("failures").get<std::size_t>()});
  return out;
}

std::string render_cells(const std::vector<AggregateCell>& cells, const std::vector<Facet>& facets, ReportFormat format) {
  std::ostringstream o;
  switch (format) {
    case ReportFormat::Json:
      return cells_to_json(cells, facets).dump(2) + "\n";
    case ReportFormat::Csv:
      for (Facet f : facets) o << to_string(f) << ',';
      o << "n,mean,half_width,mean_fractile,failures\n";
      for (const auto& c : cells) {
        for (const auto& k : c.key) o << csv_escape(k) << ',';
        o << c.n << ',' << format_fixed(c.mean, 6) << ',' << format_fixed(c.half_width, 6) << ','
          << format_fixed(c.mean_fractile, 6) << ',' << c.failures << '\n';
      }
      return o.str();
    case ReportFormat::Markdown:
      o << '|';
      for (Facet f : facets) o << ' ' << to_string(f) << " |";
      o << " n | mean | 95% CI | implicit fractile | failures |\n|";
      for (std::size_t i = 0; i < facets.size() + 5; ++i) o << "---|";
      o << '\n';
      for (const auto& c : cells) {
        o << '|';
        for (const auto& k : c.key) o << ' ' << k << " |";
        o << ' ' << c.n << " | " << fmt(c.mean) << " | ± " << fmt(c.half_width) << " | " << fmt(c.mean_fractile)
          << " | " << c.failures << " |\n";
      }
      return o.str();
  }
  return {};
}

}  // namespace invbench::eval

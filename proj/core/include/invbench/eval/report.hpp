#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invbench/common/json_util.hpp"
#include "invbench/eval/aggregate.hpp"

namespace invbench::eval {

enum class ReportFormat { Json, Csv, Markdown };
ReportFormat report_format_from_string(const std::string& text);

enum class TableShape {
  Overall,    // method rows; synthetic and real columns, deterministic lead times only
  Patterns,   // method rows; p01..p10, All Synthetic, Real (deterministic lead times)
  LeadTime,   // method rows; one column per (family, lead config)
  Fractile,   // method rows; mean implicit fractile at each rho
};
TableShape table_shape_from_string(const std::string& text);

struct TableCell {
  std::size_t n = 0;
  double mean = 0.0;
  double half_width = 0.0;
  friend bool operator==(const TableCell&, const TableCell&) = default;
};

struct Table {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::string> rows;
  std::vector<std::vector<std::optional<TableCell>>> cells;  // rows x columns
  friend bool operator==(const Table&, const Table&) = default;
};

/// Failed records are ignored. Rows follow first appearance of each method.
Table make_table(const std::vector<ResultRecord>& records, TableShape shape);

std::string render_table(const Table& table, ReportFormat format);
Json table_to_json(const Table& table);
Table table_from_json(const Json& doc);

std::string render_cells(const std::vector<AggregateCell>& cells, const std::vector<Facet>& facets, ReportFormat format);
Json cells_to_json(const std::vector<AggregateCell>& cells, const std::vector<Facet>& facets);
std::vector<AggregateCell> cells_from_json(const Json& doc);

}  // namespace invbench::eval

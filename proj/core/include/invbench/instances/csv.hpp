#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace invbench::instances {

/// RFC 4180 table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a column; throws SchemaError naming the missing column.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace invbench::instances

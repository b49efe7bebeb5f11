#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "invbench/common/json_util.hpp"
#include "invbench/eval/runner.hpp"

namespace invbench::eval {

Json record_to_json(const ResultRecord& record);
ResultRecord record_from_json(const Json& doc);

/// Append-only JSON-lines file of ResultRecords keyed by (instance id, method).
/// A later line for the same key wins. Only successful records are reused
/// when resuming, so failed episodes are retried.
class RecordStore {
 public:
  explicit RecordStore(std::filesystem::path path);

  std::optional<ResultRecord> find(const std::string& instance_id, const std::string& method) const;
  /// Thread-safe; the line is flushed before returning.
  void append(const ResultRecord& record);
  std::vector<ResultRecord> records() const;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, ResultRecord> index_;
  std::vector<std::pair<std::string, std::string>> order_;
  std::ofstream out_;
};

std::vector<ResultRecord> load_records(const std::filesystem::path& path);

}  // namespace invbench::eval

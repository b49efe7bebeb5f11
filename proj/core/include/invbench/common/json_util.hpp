#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace invbench {

using Json = nlohmann::json;

Json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);

/// Writes atomically-ish: to `path.tmp`, then renames over `path`.
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// One JSON value per non-blank line.
std::vector<Json> read_jsonl(const std::filesystem::path& path);
std::vector<Json> parse_jsonl(const std::string& text);

/// Fixed-point rendering used by reports and prompts ("%.*f").
std::string format_fixed(double value, int digits);

}  // namespace invbench

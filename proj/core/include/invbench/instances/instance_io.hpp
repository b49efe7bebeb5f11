#pragma once

#include <filesystem>
#include <vector>

#include "invbench/common/json_util.hpp"
#include "invbench/sim/instance.hpp"

namespace invbench::instances {

inline constexpr int kInstanceSchemaVersion = 1;

/// Lead times serialize as integers, or the string "lost".
Json instance_to_json(const sim::Instance& instance);
/// Throws SchemaError on missing/mistyped fields, ValidationError when the
/// decoded instance violates its invariants.
sim::Instance instance_from_json(const Json& doc);

/// Collection file: {"schema_version": 1, "instances": [...]}.
std::string serialize_instances(const std::vector<sim::Instance>& instances);
void save_instances(const std::vector<sim::Instance>& instances, const std::filesystem::path& path);

/// Accepts a collection file or a directory written by write_instance_directory.
/// An unsupported schema_version is a SchemaError naming the version.
std::vector<sim::Instance> load_instances(const std::filesystem::path& path);

/// One `<id>.json` per instance plus `manifest.json` listing ids and facet counts.
void write_instance_directory(const std::vector<sim::Instance>& instances, const std::filesystem::path& dir);

}  // namespace invbench::instances

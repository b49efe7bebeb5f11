#pragma once
#include <filesystem>

namespace invbench::testing {

inline std::filesystem::path data_dir() { return INVBENCH_TEST_DATA_DIR; }
inline std::filesystem::path golden_dir() { return INVBENCH_TEST_GOLDEN_DIR; }

}  // namespace invbench::testing

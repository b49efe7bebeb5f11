#pragma once

#include <string>
#include <vector>

#include "invbench/policy/types.hpp"

namespace invbench::policy {

struct Insight {
  int origin_period = 0;
  std::string text;
  friend bool operator==(const Insight&, const Insight&) = default;
};

/// Carry-over memos owned by the episode runner. Only agent output changes
/// the contents: a non-empty string is appended, a list replaces everything
/// (an empty list clears). Texts kept across a replacement keep their origin.
class InsightStore {
 public:
  void apply(const Decision& decision, int period);
  void append(int period, const std::string& text);
  void replace(int period, const std::vector<std::string>& texts);

  const std::vector<Insight>& items() const { return items_; }
  bool empty() const { return items_.empty(); }

  /// Bullet list "- [period N] text", or "(none)".
  std::string render() const;

 private:
  std::vector<Insight> items_;
};

}  // namespace invbench::policy

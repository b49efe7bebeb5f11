#pragma once

#include <string>

namespace invbench::acceptance {

struct GameContractResult {
  bool pass = false;
  std::string detail;
};

/// Drives full Mode A/B/C sessions for several participants over HTTP with a
/// scripted agent, then audits the exported log.
GameContractResult run_game_contract();

}  // namespace invbench::acceptance

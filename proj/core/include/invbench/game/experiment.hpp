#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "invbench/sim/instance.hpp"

namespace invbench::game {

enum class GameMode { A, B, C };

std::string to_string(GameMode mode);
GameMode game_mode_from_string(const std::string& text);
/// Complementarity label: A -> "H", B -> "H_AI", C -> "C".
std::string sample_mode(GameMode mode);

struct ExperimentOptions {
  std::uint64_t seed = 42;
  int horizon = 24;
  double profit = 4.0;   // rho = 0.8
  double holding = 1.0;
};

/// Three instances with lead times 0, 1 and "1 w.p. 0.75, else lost"
/// (promised 1), over synthetic demand: a mean shift, an upward trend and a
/// stationary series.
std::vector<sim::Instance> default_experiment_instances(const ExperimentOptions& options = {});

/// All six orderings of {A, B, C}, lexicographic; entry i is the mode of instance i.
const std::array<std::array<GameMode, 3>, 6>& mode_permutations();

}  // namespace invbench::game

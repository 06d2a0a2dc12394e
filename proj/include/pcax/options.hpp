#pragma once

#include <map>
#include <string>
#include <utility>

#include "pcax/linalg.hpp"

namespace pcax {

enum class Direction { increasing, decreasing };

// What to do with an indicator whose value is identical across all entities
// (min == max makes the 1-10 rescaling undefined).
enum class ConstantColumnPolicy { error, drop, midpoint };

// global: pillar sub-index = the global weighted sum restricted to the
// pillar's indicators (sub-indices sum to the overall index).
// local: an independent run of the whole pipeline on each pillar's subset.
enum class PillarMode { global, local };

enum class TiePolicy { competition, ordinal };

// Every policy knob the method leaves open, with defaults chosen so that two
// runs over the same inputs are reproducible byte for byte.
struct RunOptions {
  DivisorPolicy divisor = DivisorPolicy::population;
  ConstantColumnPolicy constant_policy = ConstantColumnPolicy::error;
  PillarMode pillar_mode = PillarMode::global;
  TiePolicy ties = TiePolicy::competition;

  // Empty map: per-indicator sample min/max. Entries override the bounds for
  // that indicator code; values mapped from outside [lo, hi] are clamped to
  // [1, 10]. Indicators absent from the map keep sample bounds.
  std::map<std::string, std::pair<double, double>> explicit_bounds;

  double eigen_tol = 1e-12;
  int max_sweeps = 100;
};

}  // namespace pcax

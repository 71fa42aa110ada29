#pragma once

#include <vector>

#include "povm/lp.hpp"

namespace povm {

/// One grid point of the two-outcome (p, V) square.
struct RegionCell {
  Real p2 = 0.0;
  Real v2 = 0.0;
  /// S_obs(p2, V2) ≥ S_obs(p1, V1), ties within 1e-12 counted as greater.
  bool s_greater = false;
  /// A left-stochastic P maps (p1, V1) to (p2, V2).
  bool feasible = false;
  Verdict verdict = Verdict::Infeasible;
};

/// Scans p2 ∈ [0, 1] × V2 ∈ (0, vtot) on a grid_n × grid_n grid, with the V2
/// endpoints moved inward by half a step. Each point is completed to two outcomes
/// (x, 1 − x), (v, vtot − v) and compared against (p1, V1) completed the same way.
/// Rows are ordered by p2, then V2. Throws InvalidRange.
std::vector<RegionCell> region_scan(Real p1, Real v1, Real vtot, int grid_n);

}  // namespace povm

#include "povm/region.hpp"

#include <sstream>

#include "povm/coarseness.hpp"
#include "povm/infomeasures.hpp"

namespace povm {

namespace {

WeightedDistribution two_outcome(Real p, Real v, Real vtot) {
  return WeightedDistribution::from((RVector(2) << p, 1.0 - p).finished(),
                                    (RVector(2) << v, vtot - v).finished());
}

}  // namespace

std::vector<RegionCell> region_scan(Real p1, Real v1, Real vtot, int grid_n) {
  if (!(p1 > 0.0 && p1 < 1.0) || !(v1 > 0.0 && v1 < vtot) || grid_n < 2) {
    std::ostringstream os;
    os << "need 0 < p1 < 1, 0 < v1 < vtot and grid >= 2 (got p1=" << p1 << ", v1=" << v1
       << ", vtot=" << vtot << ", grid=" << grid_n << ")";
    throw Error(ErrorCode::InvalidRange, os.str());
  }
  const WeightedDistribution reference = two_outcome(p1, v1, vtot);
  const Real s_ref = s_obs_classical(reference);
  const Real step = vtot / (grid_n - 1);

  std::vector<RegionCell> cells;
  cells.reserve(static_cast<std::size_t>(grid_n) * static_cast<std::size_t>(grid_n));
  for (int i = 0; i < grid_n; ++i) {
    const Real p2 = static_cast<Real>(i) / (grid_n - 1);
    for (int j = 0; j < grid_n; ++j) {
      Real v2 = j * step;
      if (j == 0) v2 = 0.5 * step;
      if (j == grid_n - 1) v2 = vtot - 0.5 * step;
      const WeightedDistribution w = two_outcome(p2, v2, vtot);
      RegionCell cell;
      cell.p2 = p2;
      cell.v2 = v2;
      cell.s_greater = s_obs_classical(w) >= s_ref - 1e-12;
      cell.verdict = check_coarser_classical(reference, w).verdict;
      cell.feasible = cell.verdict == Verdict::Feasible;
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace povm

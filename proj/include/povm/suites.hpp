#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "povm/coarseness.hpp"
#include "povm/random.hpp"

namespace povm {

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  /// Number of trials with at least one violated check.
  std::size_t failures = 0;
  /// One record per violated check (inputs, computed values, violated relation).
  nlohmann::json details = nlohmann::json::array();
  double elapsed_ms = 0.0;
  /// Largest independently recomputed residual over all feasible certificates.
  Real max_witness_residual = 0.0;
  std::size_t certificates = 0;

  bool passed() const { return failures == 0; }
};

nlohmann::json to_json(const SuiteReport& r);

/// Registered suite names, in execution order.
const std::vector<std::string>& suite_names();

/// Runs a registered suite over `trials` seeded instances of dimension `dim`.
/// Deterministic in (name, trials, dim, seed); throws UnknownSuite.
SuiteReport run_suite(const std::string& name, std::size_t trials, Eigen::Index dim,
                      std::uint64_t seed);

struct GoldenResult {
  std::string name;
  bool passed = false;
  std::vector<std::string> violations;
  nlohmann::json values;
};

/// The four fixed counterexample instances with their expected verdicts.
std::vector<GoldenResult> run_counterexamples();

// Instance builders shared with the acceptance run.

struct MeasurementPair {
  Measurement coarse;
  Measurement fine;
  bool constructed = false;  ///< true when coarse ↪ fine by construction
};

/// Projective coarse measurement with either a refining fine POVM (constructed)
/// or an unrelated random one. The fine measurement has at most max_fine outcomes.
MeasurementPair projective_pair(Eigen::Index dim, Rng& rng, bool constructed,
                                std::size_t max_fine = 8);

struct SubspacePair {
  Measurement coarse;
  Measurement fine;
  Subspace g;
};

/// A pair with coarse ↪ fine in g: coarse_j = Q A_j Q + U Q⊥ A_j Q⊥ U† where
/// A_j = Σ_i P_ji fine_i, Q projects on g and U is a unitary on g⊥.
SubspacePair subspace_coarser_pair(Eigen::Index dim, Rng& rng);

/// max_j ‖Π2_j − Σ_i P_ji Π1_i‖_F evaluated with plain loops.
Real recompute_mixture_residual(const Measurement& coarse, const Measurement& fine,
                                const RMatrix& p);

}  // namespace povm

#pragma once

#include <optional>
#include <vector>

#include "povm/distribution.hpp"
#include "povm/lp.hpp"
#include "povm/qmcore.hpp"

namespace povm {

/// Sorted outcome labels (0-based).
struct OutcomeSet {
  std::vector<std::size_t> indices;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  bool contains(std::size_t i) const;
  bool is_subset_of(const OutcomeSet& other) const;
  friend bool operator==(const OutcomeSet&, const OutcomeSet&) = default;
};

/// blocks[j] = I_j, the fine outcomes merged into coarse outcome j.
using Partition = std::vector<std::vector<std::size_t>>;

inline constexpr Real kDefaultFeasibilityTol = 1e-8;

/// Result of a coarseness check: C2 ↪ C1 (coarse = C2, fine = C1).
struct CoarsenessCertificate {
  Verdict verdict = Verdict::Infeasible;
  /// P_ji with rows indexed by coarse outcomes and columns by fine outcomes
  /// (restricted to the outcome sets in the subspace case).
  std::optional<StochasticMatrix> witness;
  /// Largest Frobenius (or, classically, absolute) violation of the defining equalities.
  Real residual = 0.0;
  Real phase1_optimum = 0.0;
  /// Subspace case only: V2_j − Σ_i P_ji V1_i for j in the coarse outcome set.
  std::optional<RVector> volume_slack;
  std::optional<OutcomeSet> coarse_outcomes;
  std::optional<OutcomeSet> fine_outcomes;
  /// Subspace case only: full-size transition matrix built from the witness.
  std::optional<StochasticMatrix> extension;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

/// Real components of a Hermitian matrix: d diagonal entries, then the real and
/// imaginary parts of the strict upper triangle (d² numbers in total).
RVector hermitian_components(const CMatrix& h);

/// Equalities Σ_i P_ji Π1_i = Π2_j and Σ_j P_ji = 1 in the variables
/// x[j + i·m] = P_ji, with m coarse and n fine outcomes.
LinearSystem coarser_system(const std::vector<CMatrix>& coarse, const std::vector<CMatrix>& fine);

CoarsenessCertificate check_coarser(const Measurement& coarse, const Measurement& fine,
                                    Real tol_feas = kDefaultFeasibilityTol);

/// Does a left-stochastic P with p2 = P p1 and V2 = P V1 exist?
CoarsenessCertificate check_coarser_classical(const WeightedDistribution& fine,
                                              const WeightedDistribution& coarse,
                                              Real tol_feas = kDefaultFeasibilityTol);

/// Outcomes i with ‖Π_i P_G‖_F > tol.
OutcomeSet possible_outcomes(const Measurement& c, const Subspace& g, Real tol = 1e-9);

CoarsenessCertificate check_coarser_in_subspace(const Measurement& coarse, const Measurement& fine,
                                                const Subspace& g,
                                                Real tol_feas = kDefaultFeasibilityTol);

/// max_j ‖Π2_j − Σ_i P_ji Π1_i‖_F for a full-size P.
Real mixture_residual(const Measurement& coarse, const Measurement& fine, const RMatrix& p);

struct SubspaceWitnessCheck {
  Real residual = 0.0;       ///< max_j ‖P_G(Π2_j − Σ P_ji Π1_i)P_G‖_F
  Real min_slack = 0.0;      ///< min_j V2_j − Σ P_ji V1_i
  Real column_error = 0.0;   ///< max_i |Σ_j P_ji − 1|
  Real min_entry = 0.0;

  bool holds(Real tol) const {
    return residual <= tol && min_slack >= -tol && column_error <= tol && min_entry >= -tol;
  }
};

/// Evaluates the coarser-in-G conditions for a given P indexed by (coarse_set, fine_set).
SubspaceWitnessCheck verify_subspace_witness(const Measurement& coarse, const Measurement& fine,
                                             const Subspace& g, const RMatrix& p,
                                             const OutcomeSet& coarse_set,
                                             const OutcomeSet& fine_set);

/// Extends a witness on (O2(G), O1(G)) to all outcomes: zero for coarse outcomes
/// outside O2(G), and constant C_j on fine outcomes outside O1(G) chosen so the
/// volumes transform exactly.
StochasticMatrix extend_subspace_witness(const StochasticMatrix& restricted,
                                         const OutcomeSet& coarse_set, const OutcomeSet& fine_set,
                                         const RVector& coarse_volumes,
                                         const RVector& fine_volumes);

/// Disjoint blocks with P2_j = Σ_{i∈I_j} Π1_i when coarse is projective, else nullopt.
/// Throws NotProjective when the coarse measurement is not projective.
std::optional<Partition> check_coarser_projective(const Measurement& coarse, const Measurement& fine,
                                                  Real tol = 1e-9);

/// Submatrix of a G-witness on (O2(F), O1(F)); throws BrokenColumnSum when the
/// restricted columns no longer sum to one.
StochasticMatrix restrict_transition_matrix(const StochasticMatrix& p_g, const OutcomeSet& coarse_f,
                                            const OutcomeSet& fine_f, const OutcomeSet& coarse_g,
                                            const OutcomeSet& fine_g, Real tol = 1e-7);

struct CoarsenResult {
  Measurement measurement;
  /// Rows of P that produced an element, in output order.
  std::vector<std::size_t> kept_rows;
  /// Rows of P whose element was numerically zero.
  std::vector<std::size_t> dropped_rows;
};

/// Π2_j = Σ_i P_ji Π1_i.
CoarsenResult coarsen(const Measurement& fine, const StochasticMatrix& p,
                      const Tolerances& tol = default_tolerances());

/// True iff |P_ji p_i V_j − P_ji V_i p_j| ≤ tol for all i, j, with (p_j, V_j) = P (p_i, V_i).
bool thm2_equality_condition(const StochasticMatrix& p, const WeightedDistribution& w,
                             Real tol = 1e-8);

/// max_{ij} |P_ji p_i V_j − P_ji V_i p_j|
Real thm2_equality_defect(const StochasticMatrix& p, const WeightedDistribution& w);

}  // namespace povm

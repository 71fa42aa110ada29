#pragma once

#include "povm/types.hpp"

namespace povm {

/// Constraints A x = b, G x ≤ h over non-negative variables x.
struct LinearSystem {
  RMatrix eq;
  RVector eq_rhs;
  RMatrix ineq;
  RVector ineq_rhs;
};

enum class Verdict { Feasible, Infeasible, Ambiguous };

const char* to_string(Verdict v);

struct LpOptions {
  Real tol_feas = 1e-8;
  /// 0 selects the default cap 10 · (rows + cols)².
  long max_iterations = 0;
};

struct LpResult {
  Verdict verdict = Verdict::Infeasible;
  RVector x;
  /// Largest violation of the original equalities and inequalities at x.
  Real residual = 0.0;
  /// Sum of artificial variables at the end of phase 1.
  Real phase1_optimum = 0.0;
  long iterations = 0;

  bool feasible() const { return verdict == Verdict::Feasible; }
};

/// Phase-1 simplex (dense tableau, Bland's entering rule, Harris ratio test with
/// largest-pivot tie break, periodic reinversion). Feasible when the phase-1
/// optimum and the recomputed residual are ≤ tol_feas; infeasible when the
/// optimum exceeds 10 · tol_feas; ambiguous in between.
LpResult lp_feasible(const LinearSystem& system, Eigen::Index n_vars, const LpOptions& options = {});

}  // namespace povm

#include "povm/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace povm {

namespace {

constexpr Real kCoefficientFloor = 1e-14;
constexpr Real kPivotTol = 1e-7;
constexpr Real kReducedCostTol = 1e-11;
constexpr Real kHarrisDelta = 1e-10;
constexpr long kReinvertEvery = 50;

using Tableau = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void check_shapes(const LinearSystem& s, Eigen::Index n) {
  auto bad = [](const char* what) { throw Error(ErrorCode::ShapeMismatch, what); };
  if (n <= 0) bad("LP needs at least one variable");
  if (s.eq.rows() != s.eq_rhs.size()) bad("equality matrix and rhs disagree");
  if (s.ineq.rows() != s.ineq_rhs.size()) bad("inequality matrix and rhs disagree");
  if (s.eq.rows() > 0 && s.eq.cols() != n) bad("equality matrix has wrong column count");
  if (s.ineq.rows() > 0 && s.ineq.cols() != n) bad("inequality matrix has wrong column count");
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Feasible: return "feasible";
    case Verdict::Infeasible: return "infeasible";
    case Verdict::Ambiguous: return "ambiguous";
  }
  return "unknown";
}

LpResult lp_feasible(const LinearSystem& system, Eigen::Index n_vars, const LpOptions& options) {
  check_shapes(system, n_vars);
  const Eigen::Index me = system.eq.rows();
  const Eigen::Index mi = system.ineq.rows();
  const Eigen::Index m = me + mi;
  // Columns: structural | slacks | artificials | rhs.
  const Eigen::Index n_struct = n_vars + mi;
  const Eigen::Index n_cols = n_struct + m;

  LpResult result;
  if (m == 0) {
    result.verdict = Verdict::Feasible;
    result.x = RVector::Zero(n_vars);
    return result;
  }

  Tableau t = Tableau::Zero(m + 1, n_cols + 1);
  for (Eigen::Index r = 0; r < me; ++r) {
    t.row(r).head(n_vars) = system.eq.row(r);
    t(r, n_cols) = system.eq_rhs(r);
  }
  for (Eigen::Index r = 0; r < mi; ++r) {
    t.row(me + r).head(n_vars) = system.ineq.row(r);
    t(me + r, n_vars + r) = 1.0;
    t(me + r, n_cols) = system.ineq_rhs(r);
  }
  t = t.unaryExpr([](Real v) { return std::abs(v) < kCoefficientFloor ? 0.0 : v; });
  for (Eigen::Index r = 0; r < m; ++r) {
    if (t(r, n_cols) < 0.0) t.row(r) *= -1.0;
    t(r, n_struct + r) = 1.0;
  }
  const Tableau original = t.topRows(m);

  RVector cost = RVector::Zero(n_cols + 1);
  cost.segment(n_struct, m).setOnes();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index r = 0; r < m; ++r) basis[static_cast<std::size_t>(r)] = n_struct + r;

  // Rebuilds B^-1 [A | b] and the phase-1 reduced costs from the original rows.
  auto reinvert = [&] {
    RMatrix b(m, m);
    RVector cb(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::Index col = basis[static_cast<std::size_t>(r)];
      b.col(r) = original.col(col);
      cb(r) = cost(col);
    }
    t.topRows(m) = Eigen::PartialPivLU<RMatrix>(b).solve(RMatrix(original));
    t.row(m) = cost.transpose() - cb.transpose() * t.topRows(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const Eigen::Index col = basis[static_cast<std::size_t>(r)];
      t.col(col).setZero();
      t(r, col) = 1.0;
    }
  };
  reinvert();

  const long cap = options.max_iterations > 0
                       ? options.max_iterations
                       : 10L * static_cast<long>((m + n_cols) * (m + n_cols));
  long iter = 0;
  bool stalled = false;
  bool fresh = false;
  std::vector<char> blocked(static_cast<std::size_t>(n_struct), 0);
  for (;;) {
    // Bland: first improving column. Artificials never re-enter.
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n_struct; ++j) {
      if (!blocked[static_cast<std::size_t>(j)] && t(m, j) < -kReducedCostTol) {
        enter = j;
        break;
      }
    }
    if (enter < 0) {
      if (fresh) break;
      // Confirm optimality against freshly computed reduced costs.
      reinvert();
      fresh = true;
      std::fill(blocked.begin(), blocked.end(), 0);
      stalled = false;
      continue;
    }
    fresh = false;

    // Harris two-pass ratio test: among rows within kHarrisDelta of the
    // minimum ratio, take the largest pivot.
    Real theta = std::numeric_limits<Real>::infinity();
    for (Eigen::Index r = 0; r < m; ++r) {
      const Real a = t(r, enter);
      if (a > kPivotTol) theta = std::min(theta, (std::max<Real>(t(r, n_cols), 0.0) + kHarrisDelta) / a);
    }
    Eigen::Index leave = -1;
    Real best = 0.0;
    for (Eigen::Index r = 0; r < m; ++r) {
      const Real a = t(r, enter);
      if (a <= kPivotTol || std::max<Real>(t(r, n_cols), 0.0) / a > theta) continue;
      if (leave < 0 || a > best) {
        leave = r;
        best = a;
      }
    }
    if (leave < 0) {
      // Only round-off can make an improving phase-1 column lack a pivot; skip it.
      blocked[static_cast<std::size_t>(enter)] = 1;
      stalled = true;
      continue;
    }

    if (++iter > cap) {
      std::ostringstream os;
      os << "simplex exceeded " << cap << " iterations";
      throw Error(ErrorCode::IterationLimit, os.str());
    }
    const Real piv = t(leave, enter);
    t.row(leave) /= piv;
    Eigen::VectorXd col = t.col(enter);
    col(leave) = 0.0;
    t.noalias() -= col * t.row(leave);
    t(leave, enter) = 1.0;
    basis[static_cast<std::size_t>(leave)] = enter;
    std::fill(blocked.begin(), blocked.end(), 0);
    stalled = false;
    if (iter % kReinvertEvery == 0) reinvert();
  }

  result.iterations = iter;
  result.x = RVector::Zero(n_vars);
  Real artificial = 0.0;
  for (Eigen::Index r = 0; r < m; ++r) {
    const Eigen::Index b = basis[static_cast<std::size_t>(r)];
    const Real v = std::max<Real>(t(r, n_cols), 0.0);
    if (b < n_vars) result.x(b) = v;
    if (b >= n_struct) artificial += v;
  }
  result.phase1_optimum = artificial;

  Real r = 0.0;
  if (me > 0) r = (system.eq * result.x - system.eq_rhs).cwiseAbs().maxCoeff();
  if (mi > 0) r = std::max(r, (system.ineq * result.x - system.ineq_rhs).maxCoeff());
  result.residual = std::max<Real>(r, 0.0);

  if (result.phase1_optimum <= options.tol_feas && result.residual <= options.tol_feas) {
    result.verdict = Verdict::Feasible;
  } else if (result.phase1_optimum > 10.0 * options.tol_feas && !stalled) {
    result.verdict = Verdict::Infeasible;
  } else {
    result.verdict = Verdict::Ambiguous;
  }
  return result;
}

}  // namespace povm

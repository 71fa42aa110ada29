#include <functional>

#include <gtest/gtest.h>

#include "povm/coarseness.hpp"
#include "povm/lp.hpp"
#include "povm/random.hpp"

namespace {

using namespace povm;

LinearSystem equalities(const RMatrix& a, const RVector& b) {
  LinearSystem s;
  s.eq = a;
  s.eq_rhs = b;
  s.ineq = RMatrix(0, a.cols());
  s.ineq_rhs = RVector(0);
  return s;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InternalInvariant;
}

TEST(Lp, SimplexConstraintIsFeasible) {
  const LpResult r = lp_feasible(equalities(RMatrix::Ones(1, 2), RVector::Ones(1)), 2);
  ASSERT_EQ(r.verdict, Verdict::Feasible);
  EXPECT_NEAR(r.x.sum(), 1.0, 1e-12);
  EXPECT_GE(r.x.minCoeff(), 0.0);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(Lp, NegativeTargetIsInfeasible) {
  const LpResult r = lp_feasible(equalities(RMatrix::Ones(1, 1), -RVector::Ones(1)), 1);
  EXPECT_EQ(r.verdict, Verdict::Infeasible);
  EXPECT_GT(r.phase1_optimum, 1e-8);
}

TEST(Lp, ConverseClassicalSystemIsInfeasible) {
  // p2 = P p1, V2 = P V1 with p1 = (3/4, 1/4), V1 = (1, 1), p2 = (1, 0), V2 = (9/5, 1/5).
  // Variables x[j + 2i] = P_ji.
  RMatrix a(6, 4);
  RVector b(6);
  a << 0.75, 0, 0.25, 0,
       0, 0.75, 0, 0.25,
       1, 0, 1, 0,
       0, 1, 0, 1,
       1, 1, 0, 0,
       0, 0, 1, 1;
  b << 1, 0, 1.8, 0.2, 1, 1;
  EXPECT_EQ(lp_feasible(equalities(a, b), 4).verdict, Verdict::Infeasible);
}

TEST(Lp, InequalitiesAndSlack) {
  LinearSystem s;
  s.eq = RMatrix::Ones(1, 2);
  s.eq_rhs = RVector::Ones(1);
  s.ineq = RMatrix(1, 2);
  s.ineq << 1, 0;
  s.ineq_rhs = RVector::Constant(1, 0.25);
  const LpResult r = lp_feasible(s, 2);
  ASSERT_TRUE(r.feasible());
  EXPECT_LE(r.x(0), 0.25 + 1e-12);

  s.ineq << 1, 1;
  s.ineq_rhs(0) = 0.5;
  EXPECT_EQ(lp_feasible(s, 2).verdict, Verdict::Infeasible);
}

TEST(Lp, NoConstraints) {
  LinearSystem s{RMatrix(0, 3), RVector(0), RMatrix(0, 3), RVector(0)};
  EXPECT_TRUE(lp_feasible(s, 3).feasible());
}

TEST(Lp, RedundantRows) {
  RMatrix a(3, 2);
  a << 1, 1, 2, 2, 1, 1;
  RVector b(3);
  b << 1, 2, 1;
  const LpResult r = lp_feasible(equalities(a, b), 2);
  EXPECT_TRUE(r.feasible());
}

TEST(Lp, Errors) {
  EXPECT_EQ(code_of([] { lp_feasible(equalities(RMatrix::Ones(1, 2), RVector::Ones(2)), 2); }),
            ErrorCode::ShapeMismatch);
  EXPECT_EQ(code_of([] { lp_feasible(equalities(RMatrix::Ones(1, 2), RVector::Ones(1)), 3); }),
            ErrorCode::ShapeMismatch);
  RMatrix a = RMatrix::Identity(4, 4);
  a.row(3).setOnes();
  RVector b(4);
  b << 0.1, 0.2, 0.3, 0.6;
  EXPECT_EQ(code_of([&] { lp_feasible(equalities(a, b), 4, {1e-8, 1}); }), ErrorCode::IterationLimit);
}

TEST(Lp, RandomFeasibleSystemsRecoverWitness) {
  Rng rng(51);
  for (int t = 0; t < 300; ++t) {
    const Eigen::Index n = uniform_index(2, 12, rng);
    const Eigen::Index m = uniform_index(1, n, rng);
    const RMatrix a = RMatrix::NullaryExpr(m, n, [&] { return std::normal_distribution<Real>()(rng); });
    RVector x0 = random_simplex(n, rng);
    const LpResult r = lp_feasible(equalities(a, a * x0), n);
    ASSERT_EQ(r.verdict, Verdict::Feasible) << "trial " << t;
    EXPECT_LE((a * r.x - a * x0).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_GE(r.x.minCoeff(), 0.0);
  }
}

TEST(Lp, RandomInfeasibleSystems) {
  // A row with positive coefficients and a negative target, hidden by an
  // invertible mix with random feasible rows.
  Rng rng(52);
  auto normal = [&] { return std::normal_distribution<Real>()(rng); };
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index n = uniform_index(2, 10, rng);
    const Eigen::Index k = uniform_index(1, n - 1, rng);
    RMatrix a(k + 1, n);
    a.topRows(k) = RMatrix::NullaryExpr(k, n, normal);
    a.row(k) = RVector::NullaryExpr(n, [&] { return 0.1 + std::abs(normal()); }).transpose();
    RVector b(k + 1);
    b.head(k) = a.topRows(k) * random_simplex(n, rng);
    b(k) = -0.5;
    const RMatrix mix = RMatrix::Identity(k + 1, k + 1) + 0.3 * RMatrix::NullaryExpr(k + 1, k + 1, normal);
    EXPECT_EQ(lp_feasible(equalities(mix * a, mix * b), n).verdict, Verdict::Infeasible);
  }
}

TEST(Lp, CoarsenessSystemsFromProcessing) {
  // Harder instances: low-trace fine elements give badly scaled rows.
  Rng rng(53);
  for (int t = 0; t < 60; ++t) {
    const Eigen::Index d = uniform_index(4, 6, rng);
    const Measurement fine = random_povm(d, uniform_index(d + 1, 9, rng), rng, 1);
    const Eigen::Index m = uniform_index(2, 5, rng);
    const StochasticMatrix p = random_left_stochastic(m, static_cast<Eigen::Index>(fine.size()), rng);
    const Measurement coarse = coarsen(fine, p).measurement;
    std::vector<CMatrix> a, b;
    for (std::size_t j = 0; j < coarse.size(); ++j) a.push_back(coarse.element(j));
    for (std::size_t i = 0; i < fine.size(); ++i) b.push_back(fine.element(i));
    const LpResult r = lp_feasible(coarser_system(a, b), static_cast<Eigen::Index>(a.size() * b.size()));
    EXPECT_EQ(r.verdict, Verdict::Feasible) << "trial " << t << " phase1 " << r.phase1_optimum;
    EXPECT_LE(r.residual, 1e-8);
  }
}

}  // namespace

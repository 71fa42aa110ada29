#include <cmath>
#include <functional>

#include <gtest/gtest.h>

#include "povm/coarseness.hpp"
#include "povm/infomeasures.hpp"
#include "povm/random.hpp"
#include "povm/suites.hpp"

namespace {

using namespace povm;

CMatrix proj(Eigen::Index dim, Eigen::Index k) {
  const CVector v = basis_ket(dim, k);
  return ketbra(v, v);
}

CVector plus() { return (basis_ket(2, 0) + basis_ket(2, 1)) / std::sqrt(2.0); }
CVector minus() { return (basis_ket(2, 0) - basis_ket(2, 1)) / std::sqrt(2.0); }

Measurement computational(Eigen::Index d) {
  std::vector<CMatrix> e;
  for (Eigen::Index k = 0; k < d; ++k) e.push_back(proj(d, k));
  return projective_measurement(e);
}

Measurement hadamard() {
  return projective_measurement({ketbra(plus(), plus()), ketbra(minus(), minus())});
}

Subspace span_of(const CVector& v) {
  CMatrix b(v.size(), 1);
  b.col(0) = v;
  return Subspace::span(b);
}

RVector vec(std::initializer_list<Real> xs) {
  RVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (Real x : xs) v(k++) = x;
  return v;
}

// The 4-dim pair: C2 merges |0>,|1>; C1 merges |2>,|3>.
Measurement four_dim_c2() {
  return projective_measurement({proj(4, 0) + proj(4, 1), proj(4, 2), proj(4, 3)});
}
Measurement four_dim_c1() {
  return projective_measurement({proj(4, 2) + proj(4, 3), proj(4, 0), proj(4, 1)});
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

TEST(HermitianComponents, Layout) {
  CMatrix h(2, 2);
  h << Complex(1, 0), Complex(2, 3), Complex(2, -3), Complex(4, 0);
  const RVector c = hermitian_components(h);
  ASSERT_EQ(c.size(), 4);
  EXPECT_EQ(c, vec({1, 4, 2, 3}));
}

TEST(CheckCoarser, Reflexive) {
  Rng rng(1);
  const Measurement c = random_povm(3, 4, rng);
  const CoarsenessCertificate cert = check_coarser(c, c);
  ASSERT_TRUE(cert.feasible());
  EXPECT_LE(cert.residual, 1e-8);
  EXPECT_LE(mixture_residual(c, c, cert.witness->matrix()), 1e-7);
  const CoarsenessCertificate basis = check_coarser(computational(2), computational(2));
  ASSERT_TRUE(basis.feasible());
  EXPECT_LE((basis.witness->matrix() - RMatrix::Identity(2, 2)).norm(), 1e-9);
}

TEST(CheckCoarser, TrivialMeasurementIsCoarsest) {
  Rng rng(2);
  const Measurement c = random_povm(3, 5, rng);
  const Measurement id = validate_measurement({CMatrix::Identity(3, 3)});
  const CoarsenessCertificate cert = check_coarser(id, c);
  ASSERT_TRUE(cert.feasible());
  EXPECT_LE((cert.witness->matrix() - RMatrix::Ones(1, 5)).norm(), 1e-9);
}

TEST(CheckCoarser, FourDimPairIsInfeasible) {
  const CoarsenessCertificate cert = check_coarser(four_dim_c2(), four_dim_c1());
  EXPECT_EQ(cert.verdict, Verdict::Infeasible);
  EXPECT_FALSE(cert.witness.has_value());
  EXPECT_GT(cert.phase1_optimum, 1e-7);
  EXPECT_TRUE(check_coarser(four_dim_c1(), computational(4)).feasible());
}

TEST(CheckCoarser, DimensionMismatch) {
  EXPECT_EQ(code_of([] { check_coarser(computational(2), computational(3)); }),
            ErrorCode::DimensionMismatch);
}

TEST(CheckCoarser, ConstructedPairsAreFeasibleAndSound) {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index d = uniform_index(2, 5, rng);
    const Measurement fine = random_povm(d, uniform_index(1, 6, rng), rng);
    const StochasticMatrix p =
        random_left_stochastic(uniform_index(1, 5, rng), static_cast<Eigen::Index>(fine.size()), rng);
    const Measurement coarse = coarsen(fine, p).measurement;
    const CoarsenessCertificate cert = check_coarser(coarse, fine);
    ASSERT_TRUE(cert.feasible()) << "trial " << t;
    EXPECT_LE(recompute_mixture_residual(coarse, fine, cert.witness->matrix()), 1e-7);
    EXPECT_LE((cert.witness->matrix().colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-8);
  }
}

TEST(CheckCoarser, WitnessReproducesProbabilities) {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const Eigen::Index d = uniform_index(2, 4, rng);
    const Measurement fine = random_povm(d, uniform_index(2, 5, rng), rng);
    const StochasticMatrix p =
        random_left_stochastic(uniform_index(1, 4, rng), static_cast<Eigen::Index>(fine.size()), rng);
    const Measurement coarse = coarsen(fine, p).measurement;
    const CoarsenessCertificate cert = check_coarser(coarse, fine);
    ASSERT_TRUE(cert.feasible());
    for (int s = 0; s < 50; ++s) {
      const DensityMatrix rho = random_density_matrix(d, uniform_index(1, d, rng), rng);
      const RVector p1 = outcome_probabilities(fine, rho).probs();
      const RVector p2 = outcome_probabilities(coarse, rho).probs();
      EXPECT_LE((p2 - cert.witness->matrix() * p1).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(CheckCoarserClassical, Examples) {
  const auto w = WeightedDistribution::from(vec({0.75, 0.25}), vec({1, 1}));
  EXPECT_TRUE(check_coarser_classical(w, w).feasible());
  const auto w2 = WeightedDistribution::from(vec({1, 0}), vec({1.8, 0.2}));
  const CoarsenessCertificate cert = check_coarser_classical(w, w2);
  EXPECT_EQ(cert.verdict, Verdict::Infeasible);
  EXPECT_GT(s_obs_classical(w2), s_obs_classical(w));

  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Eigen::Index n = uniform_index(1, 6, rng);
    RVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = 0.2 + std::uniform_real_distribution<Real>(0, 2)(rng);
    const auto w1 = WeightedDistribution::from(random_simplex(n, rng), v);
    const StochasticMatrix p = random_left_stochastic(uniform_index(1, 5, rng), n, rng);
    EXPECT_TRUE(check_coarser_classical(w1, push_forward(p, w1)).feasible()) << "trial " << t;
  }
}

TEST(PossibleOutcomes, Examples) {
  Rng rng(6);
  const Measurement c = random_povm(3, 4, rng);
  EXPECT_EQ(possible_outcomes(c, Subspace::full(3)).indices, (std::vector<std::size_t>{0, 1, 2, 3}));

  CMatrix f(4, 2);
  f.col(0) = basis_ket(4, 0);
  f.col(1) = basis_ket(4, 1);
  EXPECT_EQ(possible_outcomes(four_dim_c1(), Subspace::from_basis(f)).indices,
            (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(possible_outcomes(computational(2), span_of(plus())).indices,
            (std::vector<std::size_t>{0, 1}));
}

TEST(Subspace, SumOfSubspacesCounterexample) {
  const Measurement c2 = hadamard();
  const Measurement c1 = computational(2);
  for (Eigen::Index k = 0; k < 2; ++k) {
    const CoarsenessCertificate cert = check_coarser_in_subspace(c2, c1, span_of(basis_ket(2, k)));
    ASSERT_TRUE(cert.feasible());
    ASSERT_TRUE(cert.volume_slack.has_value());
    EXPECT_GE(cert.volume_slack->minCoeff(), -1e-8);
    EXPECT_EQ(cert.fine_outcomes->indices, (std::vector<std::size_t>{static_cast<std::size_t>(k)}));
    // P_G Π2_j P_G = (1/2) P_G Π1_k P_G.
    EXPECT_NEAR(cert.witness->matrix()(0, 0), 0.5, 1e-9);
    ASSERT_TRUE(cert.extension.has_value());
    EXPECT_LE((cert.extension->matrix().colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-8);
  }
  EXPECT_EQ(check_coarser_in_subspace(c2, c1, Subspace::full(2)).verdict, Verdict::Infeasible);
}

TEST(Subspace, NonExtendableWitness) {
  const Measurement c = computational(2);
  const Subspace f = span_of(plus());
  RMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  const OutcomeSet all{{0, 1}};
  const SubspaceWitnessCheck in_f = verify_subspace_witness(c, c, f, swap, all, all);
  EXPECT_TRUE(in_f.holds(1e-9));
  const SubspaceWitnessCheck in_h = verify_subspace_witness(c, c, Subspace::full(2), swap, all, all);
  EXPECT_FALSE(in_h.holds(1e-9));
  const CoarsenessCertificate full = check_coarser_in_subspace(c, c, Subspace::full(2));
  ASSERT_TRUE(full.feasible());
  EXPECT_LE((full.witness->matrix() - RMatrix::Identity(2, 2)).norm(), 1e-9);
  // Restricting the full-space witness back to F works.
  const StochasticMatrix r =
      restrict_transition_matrix(*full.witness, all, all, all, all);
  EXPECT_TRUE(verify_subspace_witness(c, c, f, r.matrix(), all, all).holds(1e-9));
}

TEST(Subspace, FullSpaceAgreesWithGlobalCheck) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const MeasurementPair pair = projective_pair(uniform_index(2, 4, rng), rng, t % 2 == 0, 6);
    const Verdict global = check_coarser(pair.coarse, pair.fine).verdict;
    const Verdict local =
        check_coarser_in_subspace(pair.coarse, pair.fine, Subspace::full(pair.fine.dim())).verdict;
    EXPECT_EQ(global, local) << "trial " << t;
  }
}

TEST(Subspace, ConstructedPairsAndRestriction) {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const SubspacePair pair = subspace_coarser_pair(uniform_index(2, 5, rng), rng);
    const CoarsenessCertificate cg = check_coarser_in_subspace(pair.coarse, pair.fine, pair.g);
    ASSERT_TRUE(cg.feasible()) << "trial " << t;
    EXPECT_TRUE(verify_subspace_witness(pair.coarse, pair.fine, pair.g, cg.witness->matrix(),
                                        *cg.coarse_outcomes, *cg.fine_outcomes)
                    .holds(1e-7));
    const Subspace f = random_subspace_of(pair.g, uniform_index(1, pair.g.dim(), rng), rng);
    const OutcomeSet o2f = possible_outcomes(pair.coarse, f);
    const OutcomeSet o1f = possible_outcomes(pair.fine, f);
    EXPECT_TRUE(o2f.is_subset_of(*cg.coarse_outcomes));
    EXPECT_TRUE(o1f.is_subset_of(*cg.fine_outcomes));
    const StochasticMatrix pf =
        restrict_transition_matrix(*cg.witness, o2f, o1f, *cg.coarse_outcomes, *cg.fine_outcomes);
    EXPECT_TRUE(verify_subspace_witness(pair.coarse, pair.fine, f, pf.matrix(), o2f, o1f).holds(1e-7));
    EXPECT_TRUE(check_coarser_in_subspace(pair.coarse, pair.fine, f).feasible());
  }
}

TEST(Subspace, ExtensionConstants) {
  // Coarse outcome 1 is impossible in G, fine outcome 2 likewise.
  const OutcomeSet o2{{0, 2}};
  const OutcomeSet o1{{0, 1}};
  RMatrix pg(2, 2);
  pg << 1.0, 0.25, 0.0, 0.75;
  const RVector v2 = vec({1.5, 1.0, 1.5});
  const RVector v1 = vec({1.0, 1.0, 2.0});
  const StochasticMatrix ext =
      extend_subspace_witness(StochasticMatrix::from(pg), o2, o1, v2, v1);
  ASSERT_EQ(ext.rows(), 3);
  ASSERT_EQ(ext.cols(), 3);
  EXPECT_NEAR(ext(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(ext(1, 1), 0.0, 1e-15);
  EXPECT_LE((ext.matrix() * v1 - v2).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((ext.matrix().colwise().sum().array() - 1.0).abs().maxCoeff(), 1e-12);
}

TEST(Projective, Examples) {
  const Measurement c2 = projective_measurement({proj(4, 0) + proj(4, 1), proj(4, 2) + proj(4, 3)});
  const auto part = check_coarser_projective(c2, computational(4));
  ASSERT_TRUE(part.has_value());
  EXPECT_EQ(*part, (Partition{{0, 1}, {2, 3}}));

  const auto same = check_coarser_projective(computational(3), computational(3));
  ASSERT_TRUE(same.has_value());
  EXPECT_EQ(*same, (Partition{{0}, {1}, {2}}));

  EXPECT_FALSE(check_coarser_projective(four_dim_c2(), four_dim_c1()).has_value());
  EXPECT_EQ(check_coarser(four_dim_c2(), four_dim_c1()).verdict, Verdict::Infeasible);

  Rng rng(9);
  const Measurement c = random_povm(2, 2, rng);
  EXPECT_EQ(code_of([&] { check_coarser_projective(c, computational(2)); }), ErrorCode::NotProjective);
}

TEST(Projective, AgreesWithLp) {
  Rng rng(10);
  for (int t = 0; t < 200; ++t) {
    const MeasurementPair pair = projective_pair(uniform_index(2, 5, rng), rng, t % 2 == 0);
    const bool fast = check_coarser_projective(pair.coarse, pair.fine).has_value();
    const CoarsenessCertificate lp = check_coarser(pair.coarse, pair.fine);
    ASSERT_NE(lp.verdict, Verdict::Ambiguous);
    EXPECT_EQ(fast, lp.feasible()) << "trial " << t;
    if (pair.constructed) EXPECT_TRUE(fast);
  }
}

TEST(Restriction, Errors) {
  const StochasticMatrix p = StochasticMatrix::identity(2);
  const OutcomeSet all{{0, 1}};
  const OutcomeSet outside{{0, 5}};
  EXPECT_EQ(code_of([&] { restrict_transition_matrix(p, outside, all, all, all); }), ErrorCode::IndexError);
  RMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  EXPECT_EQ(code_of([&] {
              restrict_transition_matrix(StochasticMatrix::from(swap), OutcomeSet{{0}}, OutcomeSet{{0}},
                                         all, all);
            }),
            ErrorCode::BrokenColumnSum);
  EXPECT_EQ(restrict_transition_matrix(p, all, all, all, all).matrix(), p.matrix());
}

TEST(Coarsen, Examples) {
  Rng rng(11);
  const Measurement c = random_povm(3, 4, rng);
  const CoarsenResult same = coarsen(c, StochasticMatrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_LE((same.measurement.element(i) - c.element(i)).norm(), 1e-12);
  const CoarsenResult merged = coarsen(c, StochasticMatrix::merge_all(4));
  ASSERT_EQ(merged.measurement.size(), 1u);
  EXPECT_LE((merged.measurement.element(0) - CMatrix::Identity(3, 3)).norm(), 1e-12);

  RMatrix p(3, 4);
  p << 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1;
  const CoarsenResult dropped = coarsen(c, StochasticMatrix::from(p));
  EXPECT_EQ(dropped.measurement.size(), 2u);
  EXPECT_EQ(dropped.kept_rows, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(dropped.dropped_rows, (std::vector<std::size_t>{1}));

  EXPECT_EQ(code_of([&] { coarsen(c, StochasticMatrix::identity(3)); }), ErrorCode::ShapeMismatch);
}

TEST(Coarsen, InteriorProcessingOfProjectiveIsNotAMerge) {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index d = uniform_index(2, 5, rng);
    const Measurement fine = random_projective(d, d, rng);
    const StochasticMatrix p = random_left_stochastic(uniform_index(2, 4, rng), d, rng);
    const Measurement coarse = coarsen(fine, p).measurement;
    EXPECT_TRUE(check_coarser(coarse, fine).feasible());
    EXPECT_FALSE(coarse.is_projective(1e-6));
  }
}

TEST(Thm2Equality, Examples) {
  const auto w = WeightedDistribution::from(vec({0.75, 0.25}), vec({1, 1}));
  EXPECT_TRUE(thm2_equality_condition(StochasticMatrix::identity(2), w));
  const auto flat = WeightedDistribution::from(vec({0.5, 0.5}), vec({1, 1}));
  EXPECT_TRUE(thm2_equality_condition(StochasticMatrix::merge_all(2), flat));
  EXPECT_FALSE(thm2_equality_condition(StochasticMatrix::merge_all(2), w));
  EXPECT_NEAR(thm2_equality_defect(StochasticMatrix::merge_all(2), w), 0.5, 1e-12);
  EXPECT_EQ(code_of([&] { thm2_equality_condition(StochasticMatrix::identity(3), w); }),
            ErrorCode::ShapeMismatch);
}

}  // namespace

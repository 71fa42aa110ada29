#include <gtest/gtest.h>

#include "povm/suites.hpp"

namespace {

using namespace povm;

TEST(Suites, RegistryOrder) {
  const auto& names = suite_names();
  ASSERT_EQ(names.size(), 14u);
  EXPECT_EQ(names.front(), "dpi_kl");
  EXPECT_EQ(names.back(), "counterexamples");
}

TEST(Suites, UnknownSuite) {
  try {
    run_suite("no_such_suite", 1, 2, 1);
    FAIL() << "no error thrown";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownSuite);
  }
}

TEST(Suites, AllPassOnSmallRuns) {
  for (const auto& name : suite_names()) {
    for (Eigen::Index d : {2, 3, 4}) {
      const SuiteReport r = run_suite(name, 40, d, 1234);
      EXPECT_TRUE(r.passed()) << name << " d=" << d << ": " << r.details.dump().substr(0, 400);
      EXPECT_LE(r.max_witness_residual, 1e-7) << name;
    }
  }
}

TEST(Suites, BoundsExample) {
  const SuiteReport r = run_suite("bounds", 1000, 4, 7);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_EQ(r.trials, 1000u);
}

TEST(Suites, CoarserEntropyExample) {
  const SuiteReport r = run_suite("coarser_entropy", 500, 3, 7);
  EXPECT_EQ(r.failures, 0u);
  EXPECT_GT(r.certificates, 0u);
}

TEST(Suites, CounterexamplesRunOnce) {
  const SuiteReport r = run_suite("counterexamples", 500, 4, 1);
  EXPECT_EQ(r.trials, 1u);
  EXPECT_EQ(r.failures, 0u);
}

TEST(Suites, Deterministic) {
  for (const char* name : {"coarser_mi", "subspace_processing", "composition"}) {
    nlohmann::json a = to_json(run_suite(name, 25, 3, 99));
    nlohmann::json b = to_json(run_suite(name, 25, 3, 99));
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    EXPECT_EQ(a, b) << name;
  }
}

TEST(Suites, ReportJsonShape) {
  const nlohmann::json j = to_json(run_suite("dpi_kl", 5, 2, 3));
  for (const char* key : {"suite", "trials", "failures", "details", "elapsed_ms"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["suite"], "dpi_kl");
}

TEST(Counterexamples, AllFourHold) {
  const auto results = run_counterexamples();
  ASSERT_EQ(results.size(), 4u);
  const char* expected[] = {"vn_relation_failure", "converse_counterexample", "sum_of_subspaces",
                            "non_extendable_witness"};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(results[k].name, expected[k]);
    EXPECT_TRUE(results[k].passed) << results[k].name;
    EXPECT_TRUE(results[k].violations.empty());
  }
}

TEST(Counterexamples, ConverseValues) {
  const auto results = run_counterexamples();
  const auto& v = results[1].values;
  EXPECT_NEAR(v["S_obs_2"].get<double>(), 0.5878, 1e-4);
  EXPECT_NEAR(v["S_obs_1"].get<double>(), 0.5623, 1e-4);
  EXPECT_LE(v["realization_deviation"].get<double>(), 1e-12);
}

TEST(Builders, ConstructedProjectivePairsRefine) {
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const MeasurementPair pair = projective_pair(4, rng, true, 6);
    EXPECT_TRUE(pair.coarse.is_projective());
    EXPECT_LE(pair.fine.size(), 6u);
    EXPECT_TRUE(check_coarser_projective(pair.coarse, pair.fine).has_value());
  }
}

TEST(Builders, SubspacePairsAreCoarserInG) {
  Rng rng(6);
  for (int t = 0; t < 50; ++t) {
    const SubspacePair pair = subspace_coarser_pair(4, rng);
    EXPECT_TRUE(check_coarser_in_subspace(pair.coarse, pair.fine, pair.g).feasible()) << "trial " << t;
  }
}

}  // namespace

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "povm/coarseness.hpp"
#include "povm/infomeasures.hpp"
#include "povm/random.hpp"
#include "povm/region.hpp"
#include "povm/suites.hpp"

namespace {

using namespace povm;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* name;
  double budget_s;
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

CMatrix proj(const CVector& v) { return v * v.adjoint(); }

CVector ket2(Complex a, Complex b) {
  CVector v(2);
  v << a, b;
  return v;
}

Subspace line(const CVector& v) {
  CMatrix b(v.size(), 1);
  b.col(0) = v;
  return Subspace::span(b);
}

WeightedDistribution wd(Real p0, Real p1, Real v0, Real v1) {
  return WeightedDistribution::from((RVector(2) << p0, p1).finished(), (RVector(2) << v0, v1).finished());
}

Outcome converse() {
  const WeightedDistribution w1 = wd(0.75, 0.25, 1.0, 1.0);
  const WeightedDistribution w2 = wd(1.0, 0.0, 1.8, 0.2);
  const CoarsenessCertificate cert = check_coarser_classical(w1, w2);
  const Real s1 = s_obs_classical(w1);
  const Real s2 = s_obs_classical(w2);
  const Real s1_ref = 0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0);
  const Real s2_ref = std::log(9.0 / 5.0);

  const CVector psi = ket2(std::sqrt(3.0) / 2.0, 0.5);
  const CVector perp = ket2(-0.5, std::sqrt(3.0) / 2.0);
  const Measurement c1 = projective_measurement({proj(basis_ket(2, 0)), proj(basis_ket(2, 1))});
  const Measurement c2 = validate_measurement({proj(psi) + 0.8 * proj(perp), 0.2 * proj(perp)});
  const DensityMatrix rho = DensityMatrix::pure(psi);
  const WeightedDistribution q1 = outcome_probabilities(c1, rho);
  const WeightedDistribution q2 = outcome_probabilities(c2, rho);
  const Real dev = std::max({(q1.probs() - w1.probs()).cwiseAbs().maxCoeff(),
                             (q1.volumes() - w1.volumes()).cwiseAbs().maxCoeff(),
                             (q2.probs() - w2.probs()).cwiseAbs().maxCoeff(),
                             (q2.volumes() - w2.volumes()).cwiseAbs().maxCoeff()});
  Outcome o;
  o.pass = cert.verdict == Verdict::Infeasible && s2 > s1 + 1e-9 && std::abs(s1 - s1_ref) <= 1e-9 &&
           std::abs(s2 - s2_ref) <= 1e-9 && dev <= 1e-12;
  o.detail = std::string("verdict=") + to_string(cert.verdict) + fmt(" S2=%.6f", s2) + fmt(" S1=%.6f", s1) +
             fmt(" realization_dev=%.1e", dev);
  return o;
}

Outcome vn_relation() {
  const CMatrix p0 = proj(basis_ket(2, 0));
  const CMatrix p1 = proj(basis_ket(2, 1));
  const Measurement c = validate_measurement({0.5 * p0, 0.5 * p0 + p1});
  const DensityMatrix rho = DensityMatrix::pure(basis_ket(2, 0));
  const EntropyReport r = observational_entropy(c, rho);
  CMatrix sigma = CMatrix::Zero(2, 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    sigma += r.probs(k) / r.volumes(k) * c.element(i);
  }
  const Real gap = std::abs(r.s_obs - von_neumann_entropy(DensityMatrix::from(sigma)));
  Outcome o;
  o.pass = gap > 0.1;
  o.detail = fmt("|S_C - S_vN(sigma)|=%.6f", gap) + fmt(" (S_C=%.6f, threshold 0.1)", r.s_obs);
  return o;
}

Outcome subspace_counterexamples() {
  const Real h = 1.0 / std::sqrt(2.0);
  const Measurement c2 = projective_measurement({proj(ket2(h, h)), proj(ket2(h, -h))});
  const Measurement c1 = projective_measurement({proj(basis_ket(2, 0)), proj(basis_ket(2, 1))});
  const bool in0 = check_coarser_in_subspace(c2, c1, line(basis_ket(2, 0))).feasible();
  const bool in1 = check_coarser_in_subspace(c2, c1, line(basis_ket(2, 1))).feasible();
  const Verdict full = check_coarser_in_subspace(c2, c1, Subspace::full(2)).verdict;

  const Subspace f = line(ket2(h, h));
  const OutcomeSet both{{0, 1}};
  const RMatrix swap = (RMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  const bool swap_in_f = verify_subspace_witness(c1, c1, f, swap, both, both).holds(1e-9);
  const bool swap_in_h = verify_subspace_witness(c1, c1, Subspace::full(2), swap, both, both).holds(1e-9);
  const CoarsenessCertificate h_cert = check_coarser(c1, c1);
  const bool identity_witness =
      h_cert.feasible() && (h_cert.witness->matrix() - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-9;
  // Any full-space witness with off-diagonal weight ≥ 0.01 is infeasible.
  LinearSystem s = coarser_system({c1.element(0), c1.element(1)}, {c1.element(0), c1.element(1)});
  s.ineq = RMatrix::Zero(1, 4);
  s.ineq(0, 1) = -1.0;
  s.ineq(0, 2) = -1.0;
  s.ineq_rhs = RVector::Constant(1, -0.01);
  const bool identity_only = lp_feasible(s, 4).verdict == Verdict::Infeasible;

  Outcome o;
  o.pass = in0 && in1 && full == Verdict::Infeasible && swap_in_f && !swap_in_h && identity_witness &&
           identity_only;
  o.detail = std::string("span0=") + (in0 ? "feasible" : "no") + " span1=" + (in1 ? "feasible" : "no") +
             " full=" + to_string(full) + " swap_in_F=" + (swap_in_f ? "yes" : "no") +
             " swap_in_H=" + (swap_in_h ? "yes" : "no") + " identity_only=" + (identity_only ? "yes" : "no");
  return o;
}

struct SuiteTotals {
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::size_t certificates = 0;
  Real max_residual = 0.0;
  std::string first_failure;
  double seconds = 0.0;
};

SuiteTotals g_suites;

Outcome theorem_suites() {
  const auto start = std::chrono::steady_clock::now();
  for (const auto& name : suite_names()) {
    if (name == "counterexamples") continue;
    for (Eigen::Index d = 2; d <= 6; ++d) {
      const SuiteReport r = run_suite(name, 500, d, 42);
      ++g_suites.runs;
      g_suites.failures += r.failures;
      g_suites.certificates += r.certificates;
      g_suites.max_residual = std::max(g_suites.max_residual, r.max_witness_residual);
      if (r.failures > 0 && g_suites.first_failure.empty()) {
        g_suites.first_failure = name + " d=" + std::to_string(d);
      }
    }
  }
  const SuiteReport golden = run_suite("counterexamples", 1, 2, 42);
  g_suites.failures += golden.failures;
  g_suites.certificates += golden.certificates;
  g_suites.max_residual = std::max(g_suites.max_residual, golden.max_witness_residual);
  g_suites.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Outcome o;
  o.pass = g_suites.failures == 0 && g_suites.runs == 65 && g_suites.seconds < 300.0;
  o.detail = std::to_string(g_suites.runs) + " suite runs x 500 trials, failures=" +
             std::to_string(g_suites.failures) +
             (g_suites.first_failure.empty() ? "" : " first=" + g_suites.first_failure);
  return o;
}

// Exhaustive oracle: every assignment of fine outcomes to a coarse outcome or to none.
bool partition_exists(const Measurement& coarse, const Measurement& fine) {
  const std::size_t m = coarse.size();
  const std::size_t n = fine.size();
  const Eigen::Index d = fine.dim();
  std::vector<std::size_t> assign(n, 0);
  for (;;) {
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      CMatrix sum = CMatrix::Zero(d, d);
      for (std::size_t i = 0; i < n; ++i) {
        if (assign[i] == j + 1) sum += fine.element(i);
      }
      ok = (sum - coarse.element(j)).norm() <= 1e-8;
    }
    if (ok) return true;
    std::size_t k = 0;
    while (k < n && ++assign[k] == m + 1) assign[k++] = 0;
    if (k == n) return false;
  }
}

Outcome projective_oracle() {
  std::seed_seq seq{42, 4};
  Rng rng(seq);
  std::size_t agree = 0, positives = 0, total = 200;
  std::string first_mismatch;
  for (std::size_t t = 0; t < total; ++t) {
    const Eigen::Index d = uniform_index(2, 4, rng);
    const MeasurementPair pair = projective_pair(d, rng, t % 2 == 0, 6);
    const bool oracle = partition_exists(pair.coarse, pair.fine);
    const Verdict lp = check_coarser(pair.coarse, pair.fine).verdict;
    positives += oracle ? 1 : 0;
    if (lp != Verdict::Ambiguous && (lp == Verdict::Feasible) == oracle) {
      ++agree;
    } else if (first_mismatch.empty()) {
      first_mismatch = " first_mismatch=" + std::to_string(t);
    }
  }
  Outcome o;
  o.pass = agree == total && positives > 0 && positives < total;
  o.detail = std::to_string(agree) + "/" + std::to_string(total) + " agree, " + std::to_string(positives) +
             " coarser" + first_mismatch;
  return o;
}

Outcome region() {
  const auto cells = region_scan(0.75, 1.0, 2.0, 101);
  std::size_t violations = 0, orange = 0, blue = 0, ambiguous = 0;
  bool point_ok = false;
  for (const RegionCell& c : cells) {
    orange += c.s_greater ? 1 : 0;
    blue += c.feasible ? 1 : 0;
    ambiguous += c.verdict == Verdict::Ambiguous ? 1 : 0;
    if (c.feasible && !c.s_greater) ++violations;
    if (std::abs(c.p2 - 1.0) < 1e-12 && std::abs(c.v2 - 1.8) < 1e-9) point_ok = c.s_greater && !c.feasible;
  }
  Outcome o;
  o.pass = cells.size() == 101u * 101u && violations == 0 && point_ok && blue < orange;
  o.detail = "violations=" + std::to_string(violations) + " orange=" + std::to_string(orange) +
             " blue=" + std::to_string(blue) + " ambiguous=" + std::to_string(ambiguous) +
             " (1,1.8) orange-not-blue=" + (point_ok ? "yes" : "no");
  return o;
}

Outcome witness_soundness() {
  Outcome o;
  o.pass = g_suites.runs > 0 && g_suites.certificates > 0 && g_suites.max_residual <= 1e-7;
  o.detail = std::to_string(g_suites.certificates) + " feasible certificates" +
             fmt(", max recomputed residual=%.2e", g_suites.max_residual);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"converse_counterexample", 1.0, converse},
      {"vn_relation_failure", 1.0, vn_relation},
      {"subspace_counterexamples", 1.0, subspace_counterexamples},
      {"theorem_suites", 300.0, theorem_suites},
      {"projective_oracle", 60.0, projective_oracle},
      {"region_scan", 10.0, region},
      {"witness_soundness", 300.0, witness_soundness},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Soundness reuses the suite runs; charge it their time.
    if (std::string(c.name) == "witness_soundness") secs += g_suites.seconds;
    const bool pass = o.pass && secs < c.budget_s;
    failed += pass ? 0 : 1;
    std::printf("%s %s: %s [%.2fs, limit %.0fs]\n", pass ? "PASS" : "FAIL", c.name, o.detail.c_str(), secs,
                c.budget_s);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

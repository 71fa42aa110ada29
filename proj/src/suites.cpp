#include "povm/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include "povm/infomeasures.hpp"
#include "povm/io.hpp"

namespace povm {

using Json = nlohmann::json;

namespace {

constexpr Real kIneqTol = 1e-9;
constexpr Real kEqTol = 1e-8;
constexpr Real kWitnessTol = 1e-7;
constexpr std::size_t kMaxDetails = 50;
constexpr int kStatesPerInstance = 50;

class Trial {
 public:
  Trial(SuiteReport& report, std::size_t index) : report_(report), index_(index) {}

  std::size_t index() const { return index_; }
  bool failed() const { return failed_; }

  template <class Payload>
  bool check(bool ok, const std::string& relation, Payload&& payload) {
    if (!ok) fail(relation, payload());
    return ok;
  }
  bool check(bool ok, const std::string& relation) {
    return check(ok, relation, [] { return Json::object(); });
  }

  void fail(const std::string& relation, Json values) {
    failed_ = true;
    if (report_.details.size() < kMaxDetails) {
      report_.details.push_back(
          Json{{"trial", index_}, {"violated", relation}, {"values", std::move(values)}});
    }
  }

  // Records an independently recomputed witness residual.
  void witness(Real residual) {
    ++report_.certificates;
    report_.max_witness_residual = std::max(report_.max_witness_residual, residual);
    check(residual <= kWitnessTol, "witness residual <= 1e-7",
          [&] { return Json{{"residual", residual}}; });
  }

 private:
  SuiteReport& report_;
  std::size_t index_;
  bool failed_ = false;
};

using SuiteFn = std::function<void(Trial&, Eigen::Index, Rng&)>;

Json pair_payload(const Measurement& coarse, const Measurement& fine) {
  return Json{{"coarse", io::to_json(coarse)}, {"fine", io::to_json(fine)}};
}

RMatrix drop_empty_rows(const RMatrix& p) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < p.rows(); ++j) {
    if (p.row(j).sum() > 0.0) keep.push_back(j);
  }
  RMatrix out(static_cast<Eigen::Index>(keep.size()), p.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = p.row(keep[k]);
  return out;
}

StochasticMatrix random_transition(Eigen::Index m, Eigen::Index n, Rng& rng) {
  const bool zero_one = uniform_index(0, 1, rng) == 1;
  return StochasticMatrix::from(drop_empty_rows(random_left_stochastic(m, n, rng, zero_one).matrix()));
}

Measurement random_measurement(Eigen::Index d, Eigen::Index n, Rng& rng) {
  switch (uniform_index(0, 2, rng)) {
    case 0: return random_povm(d, n, rng);
    case 1: return random_instrument(d, n, uniform_index(1, 2, rng), rng);
    default: return random_projective(d, std::min(n, d), rng);
  }
}

CMatrix range_basis(const CMatrix& projector) {
  const EigenSystem es = hermitian_eigensystem(projector);
  Eigen::Index r = 0;
  while (r < es.values.size() && es.values(r) > 0.5) ++r;
  return es.vectors.leftCols(r);
}

RVector probs_of(const Measurement& c, const DensityMatrix& rho) {
  return outcome_probabilities(c, rho).probs();
}

Real entropy(const Measurement& c, const DensityMatrix& rho) {
  return observational_entropy(c, rho).s_obs;
}

Real information(const Measurement& c, const DensityMatrix& rho) {
  return mutual_information(measurement_state_joint(c, rho));
}

DensityMatrix random_state(Eigen::Index d, Rng& rng) {
  return random_density_matrix(d, uniform_index(1, d, rng), rng);
}

// Splits element k into two equal halves; the result is mutually coarse with c.
Measurement split_element(const Measurement& c, std::size_t k) {
  std::vector<CMatrix> elements;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i == k) {
      elements.push_back(0.5 * c.element(i));
      elements.push_back(0.5 * c.element(i));
    } else {
      elements.push_back(c.element(i));
    }
  }
  return validate_measurement(elements);
}

Real subspace_residual(const Measurement& coarse, const Measurement& fine, const Subspace& g,
                       const RMatrix& p, const OutcomeSet& o2, const OutcomeSet& o1) {
  const CMatrix& q = g.projector().matrix();
  Real worst = 0.0;
  for (std::size_t jj = 0; jj < o2.size(); ++jj) {
    CMatrix target = q * coarse.element(o2.indices[jj]) * q;
    for (std::size_t ii = 0; ii < o1.size(); ++ii) {
      target -= p(static_cast<Eigen::Index>(jj), static_cast<Eigen::Index>(ii)) *
                (q * fine.element(o1.indices[ii]) * q);
    }
    worst = std::max(worst, target.norm());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Classical suites

void suite_dpi_kl(Trial& t, Eigen::Index d, Rng& rng) {
  const Eigen::Index n = d;
  const Eigen::Index m = uniform_index(1, d, rng);
  const RVector p = random_simplex(n, rng);
  const RVector q = random_simplex(n, rng);
  const RMatrix pm = random_left_stochastic(m, n, rng, uniform_index(0, 1, rng) == 1).matrix();
  const Real before = kl_divergence(p, q);
  const Real after = kl_divergence(pm * p, pm * q);
  auto values = [&] {
    return Json{{"p", io::to_json(p)}, {"q", io::to_json(q)}, {"P", io::to_json(pm)},
                {"D_before", before}, {"D_after", after}};
  };
  t.check(before >= -1e-10 && after >= -1e-10, "D_KL >= 0", values);
  t.check(before >= after - kIneqTol, "D(p||q) >= D(Pp||Pq)", values);

  // Equality: p_i = w_j q_i / (Pq)_j on a deterministic merge.
  std::vector<Eigen::Index> block(static_cast<std::size_t>(n));
  RMatrix merge = RMatrix::Zero(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    block[static_cast<std::size_t>(i)] = uniform_index(0, m - 1, rng);
    merge(block[static_cast<std::size_t>(i)], i) = 1.0;
  }
  const RVector qb = merge * q;
  RVector w = random_simplex(m, rng);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (qb(j) <= 0.0) w(j) = 0.0;
  }
  w /= w.sum();
  RVector pe(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index j = block[static_cast<std::size_t>(i)];
    pe(i) = w(j) * q(i) / qb(j);
  }
  const Real eq_before = kl_divergence(pe, q);
  const Real eq_after = kl_divergence(merge * pe, qb);
  t.check(std::abs(eq_before - eq_after) <= kEqTol, "DPI equality on p_i = w_j q_(i|j)", [&] {
    return Json{{"p", io::to_json(pe)}, {"q", io::to_json(q)}, {"P", io::to_json(merge)},
                {"D_before", eq_before}, {"D_after", eq_after}};
  });
}

void suite_obs_monotone(Trial& t, Eigen::Index d, Rng& rng) {
  const Eigen::Index n = d + 1;
  std::uniform_real_distribution<Real> vol(0.5, 1.5);
  {
    const Eigen::Index m = uniform_index(1, n, rng);
    const RVector p = random_simplex(n, rng);
    RVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = vol(rng);
    const WeightedDistribution w = WeightedDistribution::from(p, v);
    const StochasticMatrix pm = random_transition(m, n, rng);
    const WeightedDistribution out = push_forward(pm, w);
    const Real gain = s_obs_classical(out) - s_obs_classical(w);
    const Real defect = thm2_equality_defect(pm, w);
    auto values = [&] {
      return Json{{"w", io::to_json(w)}, {"P", io::to_json(pm.matrix())}, {"dS", gain},
                  {"defect", defect}};
    };
    t.check(gain >= -kIneqTol, "S_obs(Pw) >= S_obs(w)", values);
    if (defect <= kEqTol) t.check(std::abs(gain) <= kEqTol, "equality condition => equal S", values);
    if (defect > 1e-2) t.check(gain > kEqTol, "violated equality condition => strict increase", values);
  }

  // Equality instance: outcomes in a block share p_i / V_i and map only onto that block's rows.
  const Eigen::Index blocks = uniform_index(1, n, rng);
  const Eigen::Index m = uniform_index(blocks, n + 1, rng);
  std::vector<Eigen::Index> col_block(static_cast<std::size_t>(n));
  std::vector<Eigen::Index> row_block(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < n; ++i) {
    col_block[static_cast<std::size_t>(i)] = i < blocks ? i : uniform_index(0, blocks - 1, rng);
  }
  for (Eigen::Index j = 0; j < m; ++j) {
    row_block[static_cast<std::size_t>(j)] = j < blocks ? j : uniform_index(0, blocks - 1, rng);
  }
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = vol(rng);
  const RVector weight = random_simplex(blocks, rng);
  RVector block_volume = RVector::Zero(blocks);
  for (Eigen::Index i = 0; i < n; ++i) block_volume(col_block[static_cast<std::size_t>(i)]) += v(i);
  RVector p(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index b = col_block[static_cast<std::size_t>(i)];
    p(i) = weight(b) * v(i) / block_volume(b);
  }
  RMatrix pm = RMatrix::Zero(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index j = 0; j < m; ++j) {
      if (row_block[static_cast<std::size_t>(j)] == col_block[static_cast<std::size_t>(i)]) rows.push_back(j);
    }
    const RVector mix = random_simplex(static_cast<Eigen::Index>(rows.size()), rng);
    for (std::size_t k = 0; k < rows.size(); ++k) pm(rows[k], i) = mix(static_cast<Eigen::Index>(k));
  }
  const WeightedDistribution w = WeightedDistribution::from(p / p.sum(), v);
  const StochasticMatrix sp = StochasticMatrix::from(pm);
  const Real gain = s_obs_classical(push_forward(sp, w)) - s_obs_classical(w);
  const Real defect = thm2_equality_defect(sp, w);
  auto values = [&] {
    return Json{{"w", io::to_json(w)}, {"P", io::to_json(pm)}, {"dS", gain}, {"defect", defect}};
  };
  t.check(defect <= kEqTol, "constructed instance satisfies the equality condition", values);
  t.check(std::abs(gain) <= kEqTol, "equality condition => S_obs preserved", values);
}

void suite_dpi_mi(Trial& t, Eigen::Index d, Rng& rng) {
  const Eigen::Index nx = d;
  const Eigen::Index ny = uniform_index(2, d + 1, rng);
  const Eigen::Index nz = uniform_index(1, d + 1, rng);
  const RVector px = random_simplex(nx, rng);
  const RMatrix y_x = random_left_stochastic(ny, nx, rng).matrix();
  const RMatrix z_y = random_left_stochastic(nz, ny, rng, uniform_index(0, 1, rng) == 1).matrix();
  const RMatrix joint_xy = (y_x * px.asDiagonal()).transpose();
  const RMatrix joint_xz = (z_y * y_x * px.asDiagonal()).transpose();
  const Real ixy = mutual_information(JointDistribution::from(joint_xy));
  const Real ixz = mutual_information(JointDistribution::from(joint_xz));
  auto values = [&] {
    return Json{{"p_x", io::to_json(px)}, {"p_y|x", io::to_json(y_x)}, {"p_z|y", io::to_json(z_y)},
                {"I_xy", ixy}, {"I_xz", ixz}};
  };
  t.check(ixy >= -1e-10 && ixz >= -1e-10, "I >= 0", values);
  t.check(ixy >= ixz - kIneqTol, "I(X;Y) >= I(X;Z)", values);

  // A relabelling of Y loses nothing.
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(ny));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  RMatrix relabel = RMatrix::Zero(ny, ny);
  for (Eigen::Index y = 0; y < ny; ++y) relabel(perm[static_cast<std::size_t>(y)], y) = 1.0;
  const Real iperm =
      mutual_information(JointDistribution::from((relabel * y_x * px.asDiagonal()).transpose()));
  t.check(std::abs(iperm - ixy) <= kEqTol, "relabelling preserves I",
          [&] { return Json{{"I_xy", ixy}, {"I_relabelled", iperm}}; });
}

// ---------------------------------------------------------------------------
// Coarseness suites

void suite_projective_equiv(Trial& t, Eigen::Index d, Rng& rng) {
  const MeasurementPair pair = projective_pair(d, rng, t.index() % 2 == 0);
  const auto partition = check_coarser_projective(pair.coarse, pair.fine);
  const CoarsenessCertificate cert = check_coarser(pair.coarse, pair.fine);
  auto values = [&] {
    Json j = pair_payload(pair.coarse, pair.fine);
    j["lp_verdict"] = to_string(cert.verdict);
    j["partition_found"] = partition.has_value();
    j["phase1_optimum"] = cert.phase1_optimum;
    return j;
  };
  t.check(cert.verdict != Verdict::Ambiguous, "LP verdict is decisive", values);
  t.check(partition.has_value() == cert.feasible(), "partition exists <=> LP feasible", values);
  if (pair.constructed) t.check(cert.feasible(), "constructed refinement is coarser", values);
  if (cert.feasible()) {
    t.witness(recompute_mixture_residual(pair.coarse, pair.fine, cert.witness->matrix()));
  }
}

struct CoarsenedPair {
  Measurement fine;
  StochasticMatrix p;
  CoarsenResult coarse;
};

CoarsenedPair coarsened_pair(Eigen::Index d, Rng& rng) {
  Measurement fine = random_measurement(d, uniform_index(2, 4, rng), rng);
  StochasticMatrix p = random_transition(uniform_index(1, 4, rng), static_cast<Eigen::Index>(fine.size()), rng);
  CoarsenResult coarse = coarsen(fine, p);
  return {std::move(fine), std::move(p), std::move(coarse)};
}

RMatrix kept_rows(const StochasticMatrix& p, const std::vector<std::size_t>& rows) {
  RMatrix out(static_cast<Eigen::Index>(rows.size()), p.cols());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = p.matrix().row(static_cast<Eigen::Index>(rows[k]));
  }
  return out;
}

void suite_lemma_processing(Trial& t, Eigen::Index d, Rng& rng) {
  const CoarsenedPair pair = coarsened_pair(d, rng);
  const Measurement& c2 = pair.coarse.measurement;
  const CoarsenessCertificate cert = check_coarser(c2, pair.fine);
  auto inputs = [&] { return pair_payload(c2, pair.fine); };
  if (!t.check(cert.feasible(), "coarsen(C1, P) is coarser than C1", inputs)) return;
  const RMatrix w = cert.witness->matrix();
  t.witness(recompute_mixture_residual(c2, pair.fine, w));
  const RMatrix p = kept_rows(pair.p, pair.coarse.kept_rows);
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state(d, rng);
    const RVector p1 = probs_of(pair.fine, rho);
    const RVector p2 = probs_of(c2, rho);
    const Real err_w = (p2 - w * p1).cwiseAbs().maxCoeff();
    const Real err_p = (p2 - p * p1).cwiseAbs().maxCoeff();
    if (!t.check(err_w <= kIneqTol && err_p <= kIneqTol, "p2 = P p1 for all states", [&] {
          Json j = inputs();
          j["rho"] = io::to_json(rho);
          j["err_witness"] = err_w;
          j["err_constructed"] = err_p;
          return j;
        })) {
      return;
    }
  }

  // Unrelated pair: whatever the verdict, it must be decisive and sound.
  const Measurement other = random_povm(d, uniform_index(1, 3, rng), rng);
  const CoarsenessCertificate cert2 = check_coarser(other, pair.fine);
  t.check(cert2.verdict != Verdict::Ambiguous, "LP verdict is decisive",
          [&] { return pair_payload(other, pair.fine); });
  if (cert2.feasible()) t.witness(recompute_mixture_residual(other, pair.fine, cert2.witness->matrix()));
}

void suite_coarser_entropy(Trial& t, Eigen::Index d, Rng& rng) {
  const CoarsenedPair pair = coarsened_pair(d, rng);
  const Measurement& c2 = pair.coarse.measurement;
  auto inputs = [&] { return pair_payload(c2, pair.fine); };
  const CoarsenessCertificate cert = check_coarser(c2, pair.fine);
  if (!t.check(cert.feasible(), "coarsen(C1, P) is coarser than C1", inputs)) return;
  t.witness(recompute_mixture_residual(c2, pair.fine, cert.witness->matrix()));
  const CoarsenessCertificate reverse = check_coarser(pair.fine, c2);
  t.check(reverse.verdict != Verdict::Ambiguous, "reverse verdict is decisive", inputs);
  if (reverse.feasible()) t.witness(recompute_mixture_residual(pair.fine, c2, reverse.witness->matrix()));

  Real max_gap = 0.0;
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state(d, rng);
    const Real s1 = entropy(pair.fine, rho);
    const Real s2 = entropy(c2, rho);
    max_gap = std::max(max_gap, std::abs(s2 - s1));
    auto values = [&] {
      Json j = inputs();
      j["rho"] = io::to_json(rho);
      j["S_coarse"] = s2;
      j["S_fine"] = s1;
      return j;
    };
    if (!t.check(s2 >= s1 - kIneqTol, "S_C2 >= S_C1", values)) return;
    if (reverse.feasible() && !t.check(std::abs(s2 - s1) <= kEqTol, "mutually coarse => equal S", values)) {
      return;
    }
  }
  if (max_gap > 1e-6) {
    t.check(reverse.verdict == Verdict::Infeasible, "S differs => reverse relation fails", inputs);
  }

  // Splitting an element yields a mutually coarse measurement with equal entropy.
  const Measurement split = split_element(pair.fine, static_cast<std::size_t>(
                                                         uniform_index(0, static_cast<Eigen::Index>(pair.fine.size()) - 1, rng)));
  const CoarsenessCertificate a = check_coarser(split, pair.fine);
  const CoarsenessCertificate b = check_coarser(pair.fine, split);
  if (!t.check(a.feasible() && b.feasible(), "split measurement is mutually coarse",
               [&] { return pair_payload(split, pair.fine); })) {
    return;
  }
  t.witness(recompute_mixture_residual(split, pair.fine, a.witness->matrix()));
  t.witness(recompute_mixture_residual(pair.fine, split, b.witness->matrix()));
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state(d, rng);
    const Real s1 = entropy(pair.fine, rho);
    const Real s2 = entropy(split, rho);
    if (!t.check(std::abs(s1 - s2) <= kEqTol, "mutually coarse => equal S",
                 [&] { return Json{{"S_split", s2}, {"S_fine", s1}}; })) {
      return;
    }
  }
}

void suite_coarser_mi(Trial& t, Eigen::Index d, Rng& rng) {
  const CoarsenedPair pair = coarsened_pair(d, rng);
  const Measurement& c2 = pair.coarse.measurement;
  auto inputs = [&] { return pair_payload(c2, pair.fine); };
  const CoarsenessCertificate cert = check_coarser(c2, pair.fine);
  if (!t.check(cert.feasible(), "coarsen(C1, P) is coarser than C1", inputs)) return;
  t.witness(recompute_mixture_residual(c2, pair.fine, cert.witness->matrix()));
  const Measurement split = split_element(pair.fine, 0);
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state(d, rng);
    const Real i1 = information(pair.fine, rho);
    const Real i2 = information(c2, rho);
    const Real isplit = information(split, rho);
    auto values = [&] {
      Json j = inputs();
      j["rho"] = io::to_json(rho);
      j["I_coarse"] = i2;
      j["I_fine"] = i1;
      j["I_split"] = isplit;
      return j;
    };
    if (!t.check(i1 >= -1e-10 && i2 >= -1e-10, "I >= 0", values)) return;
    if (!t.check(i2 <= i1 + kIneqTol, "I(p2_xj) <= I(p1_xi)", values)) return;
    if (!t.check(std::abs(isplit - i1) <= kEqTol, "mutually coarse => equal I", values)) return;
  }
}

// ---------------------------------------------------------------------------
// Subspace suites

Json subspace_payload(const SubspacePair& pair) {
  Json j = pair_payload(pair.coarse, pair.fine);
  j["subspace"] = io::to_json(pair.g);
  return j;
}

bool certify_in_subspace(Trial& t, const SubspacePair& pair, const Subspace& g,
                         CoarsenessCertificate& cert) {
  cert = check_coarser_in_subspace(pair.coarse, pair.fine, g);
  if (!t.check(cert.feasible(), "constructed pair is coarser in the subspace", [&] {
        Json j = subspace_payload(pair);
        j["verdict"] = to_string(cert.verdict);
        j["phase1_optimum"] = cert.phase1_optimum;
        return j;
      })) {
    return false;
  }
  t.witness(subspace_residual(pair.coarse, pair.fine, g, cert.witness->matrix(),
                              *cert.coarse_outcomes, *cert.fine_outcomes));
  t.check(cert.volume_slack->minCoeff() >= -kEqTol, "volume slack >= 0",
          [&] { return Json{{"volume_slack", io::to_json(*cert.volume_slack)}}; });
  return true;
}

void suite_subspace_processing(Trial& t, Eigen::Index d, Rng& rng) {
  const SubspacePair pair = subspace_coarser_pair(d, rng);
  CoarsenessCertificate cert;
  if (!certify_in_subspace(t, pair, pair.g, cert)) return;
  const RMatrix e = cert.extension->matrix();
  const RVector v1 = pair.fine.volumes();
  const RVector v2 = pair.coarse.volumes();
  const Real vol_err = (v2 - e * v1).cwiseAbs().maxCoeff();
  t.check(vol_err <= kEqTol, "extension maps volumes exactly", [&] {
    Json j = subspace_payload(pair);
    j["extension"] = io::to_json(e);
    j["volume_error"] = vol_err;
    return j;
  });
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state_in(pair.g, rng, uniform_index(1, pair.g.dim(), rng));
    const Real err = (probs_of(pair.coarse, rho) - e * probs_of(pair.fine, rho)).cwiseAbs().maxCoeff();
    if (!t.check(err <= kIneqTol, "p2 = P p1 on states in G", [&] {
          Json j = subspace_payload(pair);
          j["rho"] = io::to_json(rho);
          j["error"] = err;
          return j;
        })) {
      return;
    }
  }
  // Converse direction: the restriction of the full matrix certifies the relation again.
  RMatrix restricted(static_cast<Eigen::Index>(cert.coarse_outcomes->size()),
                     static_cast<Eigen::Index>(cert.fine_outcomes->size()));
  for (std::size_t jj = 0; jj < cert.coarse_outcomes->size(); ++jj) {
    for (std::size_t ii = 0; ii < cert.fine_outcomes->size(); ++ii) {
      restricted(static_cast<Eigen::Index>(jj), static_cast<Eigen::Index>(ii)) =
          e(static_cast<Eigen::Index>(cert.coarse_outcomes->indices[jj]),
            static_cast<Eigen::Index>(cert.fine_outcomes->indices[ii]));
    }
  }
  const SubspaceWitnessCheck back = verify_subspace_witness(
      pair.coarse, pair.fine, pair.g, restricted, *cert.coarse_outcomes, *cert.fine_outcomes);
  t.check(back.holds(kEqTol), "restricted extension certifies the subspace relation",
          [&] { return subspace_payload(pair); });

  // With G the whole space the subspace relation is the plain one.
  const Subspace full = Subspace::full(d);
  const CoarsenessCertificate in_full = check_coarser_in_subspace(pair.coarse, pair.fine, full);
  const CoarsenessCertificate plain = check_coarser(pair.coarse, pair.fine);
  t.check(in_full.verdict == plain.verdict && plain.verdict != Verdict::Ambiguous,
          "G = H agrees with the plain relation", [&] {
            Json j = subspace_payload(pair);
            j["subspace_verdict"] = to_string(in_full.verdict);
            j["plain_verdict"] = to_string(plain.verdict);
            return j;
          });
  if (plain.feasible()) {
    t.witness(recompute_mixture_residual(pair.coarse, pair.fine, plain.witness->matrix()));
  }
}

void suite_subspace_entropy(Trial& t, Eigen::Index d, Rng& rng) {
  const SubspacePair pair = subspace_coarser_pair(d, rng);
  CoarsenessCertificate cert;
  if (!certify_in_subspace(t, pair, pair.g, cert)) return;
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state_in(pair.g, rng, uniform_index(1, pair.g.dim(), rng));
    const Real s1 = entropy(pair.fine, rho);
    const Real s2 = entropy(pair.coarse, rho);
    if (!t.check(s2 >= s1 - kIneqTol, "S_C2 >= S_C1 on states in G", [&] {
          Json j = subspace_payload(pair);
          j["rho"] = io::to_json(rho);
          j["S_coarse"] = s2;
          j["S_fine"] = s1;
          return j;
        })) {
      return;
    }
  }
}

void suite_subspace_mi(Trial& t, Eigen::Index d, Rng& rng) {
  const SubspacePair pair = subspace_coarser_pair(d, rng);
  CoarsenessCertificate cert;
  if (!certify_in_subspace(t, pair, pair.g, cert)) return;
  for (int s = 0; s < kStatesPerInstance; ++s) {
    const DensityMatrix rho = random_state_in(pair.g, rng, uniform_index(1, pair.g.dim(), rng));
    const Real i1 = information(pair.fine, rho);
    const Real i2 = information(pair.coarse, rho);
    if (!t.check(i2 <= i1 + kIneqTol, "I(p2_xj) <= I(p1_xi) on states in G", [&] {
          Json j = subspace_payload(pair);
          j["rho"] = io::to_json(rho);
          j["I_coarse"] = i2;
          j["I_fine"] = i1;
          return j;
        })) {
      return;
    }
  }
}

void suite_restriction(Trial& t, Eigen::Index d, Rng& rng) {
  const SubspacePair pair = subspace_coarser_pair(d, rng);
  CoarsenessCertificate cert;
  if (!certify_in_subspace(t, pair, pair.g, cert)) return;
  const Subspace f = random_subspace_of(pair.g, uniform_index(1, pair.g.dim(), rng), rng);
  const OutcomeSet o2f = possible_outcomes(pair.coarse, f);
  const OutcomeSet o1f = possible_outcomes(pair.fine, f);
  auto values = [&] {
    Json j = subspace_payload(pair);
    j["F"] = io::to_json(f);
    return j;
  };
  try {
    const StochasticMatrix pf = restrict_transition_matrix(
        *cert.witness, o2f, o1f, *cert.coarse_outcomes, *cert.fine_outcomes);
    const SubspaceWitnessCheck check =
        verify_subspace_witness(pair.coarse, pair.fine, f, pf.matrix(), o2f, o1f);
    t.check(check.holds(kEqTol), "restricted matrix certifies the relation in F", values);
    t.witness(subspace_residual(pair.coarse, pair.fine, f, pf.matrix(), o2f, o1f));
  } catch (const Error& e) {
    t.fail(std::string("restriction failed: ") + e.what(), values());
  }
  const CoarsenessCertificate in_f = check_coarser_in_subspace(pair.coarse, pair.fine, f);
  t.check(in_f.feasible(), "coarser in G => coarser in F", values);
}

// ---------------------------------------------------------------------------
// Bounds and composition

void suite_bounds(Trial& t, Eigen::Index d, Rng& rng) {
  const Measurement c = random_measurement(d, uniform_index(1, 4, rng), rng);
  const DensityMatrix rho = random_state(d, rng);
  const EntropyReport r = observational_entropy(c, rho);
  const Real ln_d = std::log(static_cast<Real>(d));
  auto values = [&] {
    return Json{{"measurement", io::to_json(c)}, {"rho", io::to_json(rho)}, {"S_C", r.s_obs},
                {"S_vN", r.s_vn}};
  };
  t.check(r.s_vn - kIneqTol <= r.s_obs, "S_vN <= S_C", values);
  t.check(r.s_obs <= ln_d + kIneqTol, "S_C <= ln d", values);

  const Real s_own = entropy(measurement_from_state(rho), rho);
  t.check(std::abs(s_own - r.s_vn) <= kIneqTol, "S_(C_rho)(rho) = S_vN(rho)",
          [&] { return Json{{"rho", io::to_json(rho)}, {"S", s_own}, {"S_vN", r.s_vn}}; });
  const Real s_mixed = entropy(c, DensityMatrix::maximally_mixed(d));
  t.check(std::abs(s_mixed - ln_d) <= kIneqTol, "S_C(1/d) = ln d",
          [&] { return Json{{"measurement", io::to_json(c)}, {"S", s_mixed}}; });

  if (t.index() < 100) {
    // Shortcut: for projective C2, C2 ↪ C1 iff S_vN(ρ2) = S_C1(ρ2) with C_ρ2 = C2.
    const MeasurementPair pair = projective_pair(d, rng, t.index() % 2 == 0);
    CMatrix rho2 = CMatrix::Zero(d, d);
    Real weight = 1.0;
    for (std::size_t j = 0; j < pair.coarse.size(); ++j, weight *= 0.5) {
      rho2 += weight * pair.coarse.element(j);
    }
    rho2 /= rho2.trace().real();
    const DensityMatrix state = DensityMatrix::from(rho2);
    const bool predicate =
        std::abs(von_neumann_entropy(state) - entropy(pair.fine, state)) <= kEqTol;
    const CoarsenessCertificate cert = check_coarser(pair.coarse, pair.fine);
    t.check(cert.verdict != Verdict::Ambiguous && cert.feasible() == predicate,
            "entropy shortcut agrees with the LP", [&] {
              Json j = pair_payload(pair.coarse, pair.fine);
              j["lp_verdict"] = to_string(cert.verdict);
              j["shortcut"] = predicate;
              return j;
            });
    if (cert.feasible()) {
      t.witness(recompute_mixture_residual(pair.coarse, pair.fine, cert.witness->matrix()));
    }
  }
}

void suite_composition(Trial& t, Eigen::Index d, Rng& rng) {
  const Measurement first = random_measurement(d, uniform_index(1, 4, rng), rng);
  const Measurement second = random_measurement(d, uniform_index(1, 3, rng), rng);
  const ComposedMeasurement comp = compose_measurements(first, second);
  auto inputs = [&] {
    return Json{{"first", io::to_json(first)}, {"second", io::to_json(second)}};
  };
  Real marginal_err = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    CMatrix sum = CMatrix::Zero(d, d);
    for (std::size_t k = 0; k < comp.labels.size(); ++k) {
      if (comp.labels[k].first == i) sum += comp.measurement.element(k);
    }
    marginal_err = std::max(marginal_err, (sum - first.element(i)).norm());
  }
  t.check(marginal_err <= kIneqTol, "sum_j Pi_ij = Pi_i", [&] {
    Json j = inputs();
    j["error"] = marginal_err;
    return j;
  });
  const CoarsenessCertificate cert = check_coarser(first, comp.measurement);
  if (!t.check(cert.feasible(), "C1 is coarser than (C1, C2)", inputs)) return;
  t.witness(recompute_mixture_residual(first, comp.measurement, cert.witness->matrix()));
  for (int s = 0; s < 10; ++s) {
    const DensityMatrix rho = random_state(d, rng);
    const Real s_first = entropy(first, rho);
    const Real s_comp = entropy(comp.measurement, rho);
    if (!t.check(s_comp <= s_first + kIneqTol, "S_(C1,C2) <= S_C1", [&] {
          Json j = inputs();
          j["rho"] = io::to_json(rho);
          j["S_composed"] = s_comp;
          j["S_first"] = s_first;
          return j;
        })) {
      return;
    }
  }
}

// ---------------------------------------------------------------------------
// Fixed counterexamples

CMatrix proj(const CVector& v) { return ketbra(v, v); }

CVector ket(std::initializer_list<Complex> entries) {
  CVector v(static_cast<Eigen::Index>(entries.size()));
  Eigen::Index k = 0;
  for (const auto& e : entries) v(k++) = e;
  return v;
}

struct Golden {
  GoldenResult result;
  void expect(bool ok, const std::string& what) {
    if (!ok) result.violations.push_back(what);
  }
};

GoldenResult golden_vn_relation() {
  Golden g;
  g.result.name = "vn_relation_failure";
  const CMatrix p0 = proj(basis_ket(2, 0));
  const CMatrix p1 = proj(basis_ket(2, 1));
  const Measurement c = validate_measurement({0.5 * p0, 0.5 * p0 + p1});
  const DensityMatrix rho = DensityMatrix::pure(basis_ket(2, 0));
  const WeightedDistribution w = outcome_probabilities(c, rho);
  const Real s_c = entropy(c, rho);
  CMatrix sigma = CMatrix::Zero(2, 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    sigma += w.probs()(static_cast<Eigen::Index>(i)) / w.volumes()(static_cast<Eigen::Index>(i)) * c.element(i);
  }
  const Real s_sigma = von_neumann_entropy(DensityMatrix::from(sigma));
  const Real s_est = von_neumann_entropy(rho);
  g.expect(std::abs(w.probs()(0) - 0.5) <= 1e-12 && std::abs(w.volumes()(0) - 0.5) <= 1e-12 &&
               std::abs(w.probs()(1) - 0.5) <= 1e-12 && std::abs(w.volumes()(1) - 1.5) <= 1e-12,
           "p = (1/2, 1/2), V = (1/2, 3/2)");
  g.expect(std::abs(s_c - 0.5 * std::log(3.0)) <= 1e-12, "S_C = (1/2) ln 3");
  g.expect(std::abs(s_sigma - (2.0 / 3.0 * std::log(1.5) + std::log(3.0) / 3.0)) <= 1e-12,
           "S_vN(sum p_i Pi_i / V_i) = H(2/3, 1/3)");
  g.expect(std::abs(s_c - s_sigma) > 1e-6, "S_C != S_vN(sum p_i Pi_i / V_i)");
  g.expect(s_c > 1e-6 && s_est <= 1e-12, "S_C > 0 although the state is fully determined");
  g.result.values = Json{{"S_C", s_c}, {"S_vN_sigma", s_sigma}, {"gap", std::abs(s_c - s_sigma)},
                         {"S_vN_rho", s_est}};
  return g.result;
}

GoldenResult golden_converse() {
  Golden g;
  g.result.name = "converse_counterexample";
  const RVector p1 = (RVector(2) << 0.75, 0.25).finished();
  const RVector v1 = (RVector(2) << 1.0, 1.0).finished();
  const RVector p2 = (RVector(2) << 1.0, 0.0).finished();
  const RVector v2 = (RVector(2) << 9.0 / 5.0, 1.0 / 5.0).finished();
  const WeightedDistribution w1 = WeightedDistribution::from(p1, v1);
  const WeightedDistribution w2 = WeightedDistribution::from(p2, v2);
  const CoarsenessCertificate cert = check_coarser_classical(w1, w2);
  const Real s1 = s_obs_classical(w1);
  const Real s2 = s_obs_classical(w2);
  g.expect(cert.verdict == Verdict::Infeasible, "classical pair is infeasible");
  g.expect(std::abs(s2 - std::log(1.8)) <= 1e-12, "S_obs(p2, V2) = ln(9/5)");
  g.expect(std::abs(s1 - (0.75 * std::log(4.0 / 3.0) + 0.25 * std::log(4.0))) <= 1e-12,
           "S_obs(p1, V1) = 3/4 ln(4/3) + 1/4 ln 4");
  g.expect(s2 > s1 + 1e-9, "S_obs(p2, V2) > S_obs(p1, V1)");

  const CVector psi = ket({std::sqrt(3.0) / 2.0, 0.5});
  const CVector perp = ket({-0.5, std::sqrt(3.0) / 2.0});
  const Measurement c1 = projective_measurement({proj(basis_ket(2, 0)), proj(basis_ket(2, 1))});
  const Measurement c2 = validate_measurement({proj(psi) + 0.8 * proj(perp), 0.2 * proj(perp)});
  const DensityMatrix rho = DensityMatrix::pure(psi);
  const WeightedDistribution q1 = outcome_probabilities(c1, rho);
  const WeightedDistribution q2 = outcome_probabilities(c2, rho);
  const Real dev = std::max({(q1.probs() - p1).cwiseAbs().maxCoeff(),
                             (q1.volumes() - v1).cwiseAbs().maxCoeff(),
                             (q2.probs() - p2).cwiseAbs().maxCoeff(),
                             (q2.volumes() - v2).cwiseAbs().maxCoeff()});
  g.expect(dev <= 1e-12, "quantum realization reproduces (p, V)");
  const CoarsenessCertificate quantum = check_coarser(c2, c1);
  g.expect(quantum.verdict == Verdict::Infeasible, "quantum pair is not coarser");
  g.result.values = Json{{"S_obs_1", s1}, {"S_obs_2", s2}, {"phase1_optimum", cert.phase1_optimum},
                         {"realization_deviation", dev}};
  return g.result;
}

GoldenResult golden_sum_of_subspaces() {
  Golden g;
  g.result.name = "sum_of_subspaces";
  const Real h = 1.0 / std::sqrt(2.0);
  const Measurement c2 = projective_measurement({proj(ket({h, h})), proj(ket({h, -h}))});
  const Measurement c1 = projective_measurement({proj(basis_ket(2, 0)), proj(basis_ket(2, 1))});
  const Subspace g0 = Subspace::from_basis(basis_ket(2, 0));
  const Subspace g1 = Subspace::from_basis(basis_ket(2, 1));
  const CoarsenessCertificate in0 = check_coarser_in_subspace(c2, c1, g0);
  const CoarsenessCertificate in1 = check_coarser_in_subspace(c2, c1, g1);
  const CoarsenessCertificate full = check_coarser_in_subspace(c2, c1, Subspace::full(2));
  const CoarsenessCertificate plain = check_coarser(c2, c1);
  g.expect(in0.feasible(), "coarser in span(|0>)");
  g.expect(in1.feasible(), "coarser in span(|1>)");
  if (in0.feasible()) {
    const RMatrix half = RMatrix::Constant(2, 1, 0.5);
    g.expect((in0.witness->matrix() - half).cwiseAbs().maxCoeff() <= 1e-9,
             "witness in span(|0>) is P = (1/2, 1/2)");
  }
  g.expect(full.verdict == Verdict::Infeasible, "not coarser in span(|0>, |1>)");
  g.expect(plain.verdict == Verdict::Infeasible, "not coarser in the full space");
  g.result.values = Json{{"G0", io::to_json(in0)}, {"G1", io::to_json(in1)},
                         {"full", io::to_json(full)}};
  return g.result;
}

GoldenResult golden_non_extendable() {
  Golden g;
  g.result.name = "non_extendable_witness";
  const Real h = 1.0 / std::sqrt(2.0);
  const Measurement c = projective_measurement({proj(basis_ket(2, 0)), proj(basis_ket(2, 1))});
  const Subspace f = Subspace::from_basis(ket({h, h}));
  const OutcomeSet both{{0, 1}};
  const RMatrix swap = (RMatrix(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  const SubspaceWitnessCheck in_f = verify_subspace_witness(c, c, f, swap, both, both);
  g.expect(possible_outcomes(c, f) == both, "both outcomes are possible in span(|+>)");
  g.expect(in_f.holds(1e-12), "swap witness is valid in span(|+>)");
  g.expect(check_coarser_in_subspace(c, c, f).feasible(), "LP finds C coarser than C in span(|+>)");

  const CoarsenessCertificate full = check_coarser(c, c);
  g.expect(full.feasible(), "C is coarser than itself in the full space");
  if (full.feasible()) {
    g.expect((full.witness->matrix() - RMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-9,
             "full-space witness is the identity");
  }
  g.expect(mixture_residual(c, c, swap) > 0.5, "swap does not extend to the full space");
  // Uniqueness: forcing any weight off the diagonal makes the full-space system infeasible.
  LinearSystem s = coarser_system({c.element(0), c.element(1)}, {c.element(0), c.element(1)});
  s.ineq = RMatrix::Zero(1, 4);
  s.ineq(0, 1) = -1.0;  // P_10
  s.ineq(0, 2) = -1.0;  // P_01
  s.ineq_rhs = RVector::Constant(1, -0.01);
  g.expect(lp_feasible(s, 4).verdict == Verdict::Infeasible, "identity is the only full-space witness");
  // Restriction goes through: the identity restricted to span(|+>) is still valid there.
  const StochasticMatrix restricted =
      restrict_transition_matrix(StochasticMatrix::identity(2), both, both, both, both);
  g.expect(verify_subspace_witness(c, c, f, restricted.matrix(), both, both).holds(1e-12),
           "restricted identity is valid in span(|+>)");
  g.result.values = Json{{"swap_residual_full", mixture_residual(c, c, swap)},
                         {"swap_residual_F", in_f.residual}};
  return g.result;
}

void suite_counterexamples(Trial& t, Eigen::Index, Rng&) {
  for (const GoldenResult& r : run_counterexamples()) {
    for (const auto& v : r.violations) t.fail(r.name + ": " + v, r.values);
  }
}

struct Entry {
  const char* name;
  SuiteFn fn;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"dpi_kl", suite_dpi_kl},
      {"obs_monotone", suite_obs_monotone},
      {"dpi_mi", suite_dpi_mi},
      {"projective_equiv", suite_projective_equiv},
      {"lemma_processing", suite_lemma_processing},
      {"coarser_entropy", suite_coarser_entropy},
      {"coarser_mi", suite_coarser_mi},
      {"subspace_processing", suite_subspace_processing},
      {"subspace_entropy", suite_subspace_entropy},
      {"subspace_mi", suite_subspace_mi},
      {"restriction", suite_restriction},
      {"bounds", suite_bounds},
      {"composition", suite_composition},
      {"counterexamples", suite_counterexamples},
  };
  return entries;
}

}  // namespace

Real recompute_mixture_residual(const Measurement& coarse, const Measurement& fine,
                                const RMatrix& p) {
  Real worst = 0.0;
  const Eigen::Index d = fine.dim();
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    Real sq = 0.0;
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) {
        Complex acc = coarse.element(j)(r, c);
        for (std::size_t i = 0; i < fine.size(); ++i) {
          acc -= p(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) * fine.element(i)(r, c);
        }
        sq += std::norm(acc);
      }
    }
    worst = std::max(worst, std::sqrt(sq));
  }
  return worst;
}

MeasurementPair projective_pair(Eigen::Index dim, Rng& rng, bool constructed, std::size_t max_fine) {
  const Eigen::Index m = uniform_index(1, std::min<Eigen::Index>(dim, static_cast<Eigen::Index>(max_fine)), rng);
  Measurement coarse = random_projective(dim, m, rng);
  if (!constructed) {
    const Eigen::Index n = uniform_index(1, std::min<Eigen::Index>(4, static_cast<Eigen::Index>(max_fine)), rng);
    return {std::move(coarse), random_measurement(dim, n, rng), false};
  }
  std::vector<CMatrix> elements;
  std::size_t budget = max_fine - coarse.size();  // extra outcomes beyond one per block
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    const CMatrix basis = range_basis(coarse.element(j));
    const Eigen::Index extra = budget > 0 ? uniform_index(0, 1, rng) : 0;
    budget -= static_cast<std::size_t>(extra);
    const Measurement local = random_povm(basis.cols(), 1 + extra, rng);
    for (std::size_t k = 0; k < local.size(); ++k) {
      elements.push_back(basis * local.element(k) * basis.adjoint());
    }
  }
  std::shuffle(elements.begin(), elements.end(), rng);
  return {std::move(coarse), validate_measurement(elements), true};
}

SubspacePair subspace_coarser_pair(Eigen::Index dim, Rng& rng) {
  const Eigen::Index k = uniform_index(1, dim, rng);
  const CMatrix u = random_unitary(dim, rng);
  const CMatrix gb = u.leftCols(k);
  const CMatrix cb = u.rightCols(dim - k);
  const CMatrix q = gb * gb.adjoint();

  std::vector<CMatrix> fine_elements;
  if (k < dim && uniform_index(0, 1, rng) == 1) {
    // Block structure: some outcomes are impossible inside G.
    const Measurement inside = random_povm(k, uniform_index(1, 3, rng), rng);
    const Measurement outside = random_povm(dim - k, uniform_index(1, 2, rng), rng);
    for (std::size_t i = 0; i < inside.size(); ++i) fine_elements.push_back(gb * inside.element(i) * gb.adjoint());
    for (std::size_t i = 0; i < outside.size(); ++i) fine_elements.push_back(cb * outside.element(i) * cb.adjoint());
    std::shuffle(fine_elements.begin(), fine_elements.end(), rng);
  } else {
    const Measurement c = random_povm(dim, uniform_index(2, 4, rng), rng);
    for (std::size_t i = 0; i < c.size(); ++i) fine_elements.push_back(c.element(i));
  }
  Measurement fine = validate_measurement(fine_elements);

  const StochasticMatrix p =
      random_transition(uniform_index(1, 4, rng), static_cast<Eigen::Index>(fine.size()), rng);
  const CMatrix uc = dim > k ? CMatrix(cb * random_unitary(dim - k, rng) * cb.adjoint())
                             : CMatrix(CMatrix::Zero(dim, dim));
  std::vector<CMatrix> coarse_elements;
  for (Eigen::Index j = 0; j < p.rows(); ++j) {
    CMatrix a = CMatrix::Zero(dim, dim);
    for (std::size_t i = 0; i < fine.size(); ++i) a += p(j, static_cast<Eigen::Index>(i)) * fine.element(i);
    CMatrix e = q * a * q + uc * a * uc.adjoint();
    coarse_elements.push_back((e + e.adjoint()) * 0.5);
  }
  return {validate_measurement(coarse_elements), std::move(fine), Subspace::from_basis(gb)};
}

nlohmann::json to_json(const SuiteReport& r) {
  return Json{{"suite", r.suite},
              {"trials", r.trials},
              {"failures", r.failures},
              {"details", r.details},
              {"elapsed_ms", r.elapsed_ms},
              {"certificates", r.certificates},
              {"max_witness_residual", r.max_witness_residual}};
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

std::vector<GoldenResult> run_counterexamples() {
  std::vector<GoldenResult> out;
  for (auto fn : {golden_vn_relation, golden_converse, golden_sum_of_subspaces, golden_non_extendable}) {
    GoldenResult r;
    try {
      r = fn();
    } catch (const Error& e) {
      r.violations.push_back(std::string("unexpected error: ") + e.what());
    }
    r.passed = r.violations.empty();
    out.push_back(std::move(r));
  }
  return out;
}

SuiteReport run_suite(const std::string& name, std::size_t trials, Eigen::Index dim,
                      std::uint64_t seed) {
  const auto& reg = registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const Entry& e) { return name == e.name; });
  if (it == reg.end()) throw Error(ErrorCode::UnknownSuite, "no suite named \"" + name + "\"");
  if (dim < 1) throw Error(ErrorCode::InvalidRange, "dimension must be positive");
  const bool golden = name == "counterexamples";
  if (golden) trials = 1;

  SuiteReport report;
  report.suite = name;
  report.trials = trials;
  const auto start = std::chrono::steady_clock::now();
  const auto suite_id = static_cast<std::uint32_t>(it - reg.begin());
  for (std::size_t i = 0; i < trials; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), suite_id, static_cast<std::uint32_t>(dim)};
    Rng rng(seq);
    Trial trial(report, i);
    try {
      it->fn(trial, dim, rng);
    } catch (const Error& e) {
      trial.fail(std::string("error: ") + e.what(), Json::object());
    }
    if (trial.failed()) ++report.failures;
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace povm

#include "povm/coarseness.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "povm/infomeasures.hpp"

namespace povm {

namespace {

std::vector<CMatrix> elements_of(const Measurement& c) {
  std::vector<CMatrix> out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(c.element(i));
  return out;
}

// Reshapes the LP solution into P (m × n) and rescales columns to sum exactly to one.
RMatrix witness_from(const RVector& x, Eigen::Index m, Eigen::Index n) {
  RMatrix p = Eigen::Map<const RMatrix>(x.data(), m, n).cwiseMax(0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real s = p.col(i).sum();
    if (s > 0.0) p.col(i) /= s;
  }
  return p;
}

void require_same_dim(const Measurement& a, const Measurement& b) {
  if (a.dim() != b.dim()) {
    std::ostringstream os;
    os << "measurements act on dimensions " << a.dim() << " and " << b.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

CMatrix mixture(const std::vector<CMatrix>& fine, const RMatrix& p, Eigen::Index j) {
  CMatrix out = CMatrix::Zero(fine.front().rows(), fine.front().cols());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const Real w = p(j, static_cast<Eigen::Index>(i));
    if (w != 0.0) out += w * fine[i];
  }
  return out;
}

}  // namespace

bool OutcomeSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

bool OutcomeSet::is_subset_of(const OutcomeSet& other) const {
  return std::includes(other.indices.begin(), other.indices.end(), indices.begin(), indices.end());
}

RVector hermitian_components(const CMatrix& h) {
  const Eigen::Index d = h.rows();
  RVector out(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index r = 0; r < d; ++r) out(k++) = h(r, r).real();
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = r + 1; c < d; ++c) {
      out(k++) = h(r, c).real();
      out(k++) = h(r, c).imag();
    }
  }
  return out;
}

LinearSystem coarser_system(const std::vector<CMatrix>& coarse, const std::vector<CMatrix>& fine) {
  const auto m = static_cast<Eigen::Index>(coarse.size());
  const auto n = static_cast<Eigen::Index>(fine.size());
  const Eigen::Index d = fine.front().rows();
  const Eigen::Index block = d * d;

  std::vector<RVector> fine_comp;
  fine_comp.reserve(fine.size());
  for (const auto& f : fine) fine_comp.push_back(hermitian_components(f));

  LinearSystem s;
  s.eq = RMatrix::Zero(m * block + n, m * n);
  s.eq_rhs = RVector::Zero(m * block + n);
  for (Eigen::Index j = 0; j < m; ++j) {
    s.eq_rhs.segment(j * block, block) = hermitian_components(coarse[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < n; ++i) {
      s.eq.block(j * block, j + i * m, block, 1) = fine_comp[static_cast<std::size_t>(i)];
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) s.eq(m * block + i, j + i * m) = 1.0;
    s.eq_rhs(m * block + i) = 1.0;
  }
  return s;
}

Real mixture_residual(const Measurement& coarse, const Measurement& fine, const RMatrix& p) {
  if (p.rows() != static_cast<Eigen::Index>(coarse.size()) ||
      p.cols() != static_cast<Eigen::Index>(fine.size())) {
    throw Error(ErrorCode::ShapeMismatch, "witness shape does not match the measurements");
  }
  const auto fine_el = elements_of(fine);
  Real worst = 0.0;
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    worst = std::max(worst,
                     (coarse.element(j) - mixture(fine_el, p, static_cast<Eigen::Index>(j))).norm());
  }
  return worst;
}

CoarsenessCertificate check_coarser(const Measurement& coarse, const Measurement& fine,
                                    Real tol_feas) {
  require_same_dim(coarse, fine);
  const auto m = static_cast<Eigen::Index>(coarse.size());
  const auto n = static_cast<Eigen::Index>(fine.size());
  const LpResult lp = lp_feasible(coarser_system(elements_of(coarse), elements_of(fine)), m * n,
                                  {tol_feas, 0});
  CoarsenessCertificate cert;
  cert.verdict = lp.verdict;
  cert.phase1_optimum = lp.phase1_optimum;
  const RMatrix p = witness_from(lp.x, m, n);
  cert.residual = mixture_residual(coarse, fine, p);
  if (cert.feasible()) {
    if (cert.residual > tol_feas) {
      cert.verdict = Verdict::Ambiguous;
    } else {
      cert.witness = StochasticMatrix::from(p, tol_feas);
    }
  }
  return cert;
}

CoarsenessCertificate check_coarser_classical(const WeightedDistribution& fine,
                                              const WeightedDistribution& coarse, Real tol_feas) {
  const Eigen::Index m = coarse.size();
  const Eigen::Index n = fine.size();
  LinearSystem s;
  s.eq = RMatrix::Zero(2 * m + n, m * n);
  s.eq_rhs = RVector::Zero(2 * m + n);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      s.eq(j, j + i * m) = fine.probs()(i);
      s.eq(m + j, j + i * m) = fine.volumes()(i);
      s.eq(2 * m + i, j + i * m) = 1.0;
    }
    s.eq_rhs(j) = coarse.probs()(j);
    s.eq_rhs(m + j) = coarse.volumes()(j);
  }
  s.eq_rhs.tail(n).setOnes();
  const LpResult lp = lp_feasible(s, m * n, {tol_feas, 0});

  CoarsenessCertificate cert;
  cert.verdict = lp.verdict;
  cert.phase1_optimum = lp.phase1_optimum;
  const RMatrix p = witness_from(lp.x, m, n);
  cert.residual = std::max((p * fine.probs() - coarse.probs()).cwiseAbs().maxCoeff(),
                           (p * fine.volumes() - coarse.volumes()).cwiseAbs().maxCoeff());
  if (cert.feasible()) {
    if (cert.residual > tol_feas) {
      cert.verdict = Verdict::Ambiguous;
    } else {
      cert.witness = StochasticMatrix::from(p, tol_feas);
    }
  }
  return cert;
}

OutcomeSet possible_outcomes(const Measurement& c, const Subspace& g, Real tol) {
  if (c.dim() != g.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace and measurement dimensions differ");
  }
  OutcomeSet out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if ((c.element(i) * g.projector().matrix()).norm() > tol) out.indices.push_back(i);
  }
  return out;
}

SubspaceWitnessCheck verify_subspace_witness(const Measurement& coarse, const Measurement& fine,
                                             const Subspace& g, const RMatrix& p,
                                             const OutcomeSet& coarse_set,
                                             const OutcomeSet& fine_set) {
  if (p.rows() != static_cast<Eigen::Index>(coarse_set.size()) ||
      p.cols() != static_cast<Eigen::Index>(fine_set.size())) {
    throw Error(ErrorCode::ShapeMismatch, "witness shape does not match the outcome sets");
  }
  const CMatrix& q = g.projector().matrix();
  const RVector v1 = fine.volumes();
  const RVector v2 = coarse.volumes();
  SubspaceWitnessCheck out;
  out.min_slack = std::numeric_limits<Real>::infinity();
  for (Eigen::Index jj = 0; jj < p.rows(); ++jj) {
    const std::size_t j = coarse_set.indices[static_cast<std::size_t>(jj)];
    CMatrix diff = coarse.element(j);
    Real vol = 0.0;
    for (Eigen::Index ii = 0; ii < p.cols(); ++ii) {
      const std::size_t i = fine_set.indices[static_cast<std::size_t>(ii)];
      diff -= p(jj, ii) * fine.element(i);
      vol += p(jj, ii) * v1(static_cast<Eigen::Index>(i));
    }
    out.residual = std::max(out.residual, (q * diff * q).norm());
    out.min_slack = std::min(out.min_slack, v2(static_cast<Eigen::Index>(j)) - vol);
  }
  out.column_error = (p.colwise().sum().array() - 1.0).abs().maxCoeff();
  out.min_entry = p.minCoeff();
  return out;
}

StochasticMatrix extend_subspace_witness(const StochasticMatrix& restricted,
                                         const OutcomeSet& coarse_set, const OutcomeSet& fine_set,
                                         const RVector& coarse_volumes,
                                         const RVector& fine_volumes) {
  const Eigen::Index m = coarse_volumes.size();
  const Eigen::Index n = fine_volumes.size();
  RMatrix full = RMatrix::Zero(m, n);
  for (std::size_t jj = 0; jj < coarse_set.size(); ++jj) {
    for (std::size_t ii = 0; ii < fine_set.size(); ++ii) {
      full(static_cast<Eigen::Index>(coarse_set.indices[jj]),
           static_cast<Eigen::Index>(fine_set.indices[ii])) =
          restricted(static_cast<Eigen::Index>(jj), static_cast<Eigen::Index>(ii));
    }
  }
  Real outside_volume = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!fine_set.contains(static_cast<std::size_t>(i))) outside_volume += fine_volumes(i);
  }
  if (outside_volume > 0.0) {
    const RVector assigned = full * fine_volumes;
    for (Eigen::Index j = 0; j < m; ++j) {
      const Real cj = std::max<Real>((coarse_volumes(j) - assigned(j)) / outside_volume, 0.0);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!fine_set.contains(static_cast<std::size_t>(i))) full(j, i) = cj;
      }
    }
  }
  return StochasticMatrix::from(full, 1e-7);
}

CoarsenessCertificate check_coarser_in_subspace(const Measurement& coarse, const Measurement& fine,
                                                const Subspace& g, Real tol_feas) {
  require_same_dim(coarse, fine);
  if (g.ambient_dim() != fine.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace and measurement dimensions differ");
  }
  const OutcomeSet o2 = possible_outcomes(coarse, g);
  const OutcomeSet o1 = possible_outcomes(fine, g);
  if (o1.empty() || o2.empty()) {
    throw Error(ErrorCode::EmptyOutcomeSet, "no outcome is possible in the subspace");
  }
  const CMatrix& q = g.projector().matrix();
  std::vector<CMatrix> coarse_proj, fine_proj;
  for (auto j : o2.indices) coarse_proj.push_back(q * coarse.element(j) * q);
  for (auto i : o1.indices) fine_proj.push_back(q * fine.element(i) * q);

  const auto m = static_cast<Eigen::Index>(o2.size());
  const auto n = static_cast<Eigen::Index>(o1.size());
  LinearSystem s = coarser_system(coarse_proj, fine_proj);
  const RVector v1 = fine.volumes();
  const RVector v2 = coarse.volumes();
  s.ineq = RMatrix::Zero(m, m * n);
  s.ineq_rhs = RVector(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      s.ineq(j, j + i * m) = v1(static_cast<Eigen::Index>(o1.indices[static_cast<std::size_t>(i)]));
    }
    s.ineq_rhs(j) = v2(static_cast<Eigen::Index>(o2.indices[static_cast<std::size_t>(j)]));
  }
  const LpResult lp = lp_feasible(s, m * n, {tol_feas, 0});

  CoarsenessCertificate cert;
  cert.verdict = lp.verdict;
  cert.phase1_optimum = lp.phase1_optimum;
  cert.coarse_outcomes = o2;
  cert.fine_outcomes = o1;
  const RMatrix p = witness_from(lp.x, m, n);
  const SubspaceWitnessCheck check = verify_subspace_witness(coarse, fine, g, p, o2, o1);
  cert.residual = check.residual;
  if (cert.feasible()) {
    if (!check.holds(tol_feas)) {
      cert.verdict = Verdict::Ambiguous;
    } else {
      RVector v1_g(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        v1_g(i) = v1(static_cast<Eigen::Index>(o1.indices[static_cast<std::size_t>(i)]));
      }
      cert.volume_slack = s.ineq_rhs - p * v1_g;
      cert.witness = StochasticMatrix::from(p, tol_feas);
      cert.extension = extend_subspace_witness(*cert.witness, o2, o1, v2, v1);
    }
  }
  return cert;
}

std::optional<Partition> check_coarser_projective(const Measurement& coarse, const Measurement& fine,
                                                  Real tol) {
  require_same_dim(coarse, fine);
  if (!coarse.is_projective()) {
    throw Error(ErrorCode::NotProjective, "coarse measurement is not projective");
  }
  Partition blocks(coarse.size());
  for (std::size_t i = 0; i < fine.size(); ++i) {
    std::optional<std::size_t> owner;
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      const Real overlap = fine.element(i).cwiseProduct(coarse.element(j).transpose()).sum().real();
      if (overlap > tol) {
        if (owner) return std::nullopt;  // overlaps two projectors
        owner = j;
      }
    }
    if (!owner) return std::nullopt;
    blocks[*owner].push_back(i);
  }
  for (std::size_t j = 0; j < coarse.size(); ++j) {
    CMatrix sum = CMatrix::Zero(fine.dim(), fine.dim());
    for (auto i : blocks[j]) sum += fine.element(i);
    if ((sum - coarse.element(j)).norm() > 1e-8) return std::nullopt;
  }
  return blocks;
}

StochasticMatrix restrict_transition_matrix(const StochasticMatrix& p_g, const OutcomeSet& coarse_f,
                                            const OutcomeSet& fine_f, const OutcomeSet& coarse_g,
                                            const OutcomeSet& fine_g, Real tol) {
  if (p_g.rows() != static_cast<Eigen::Index>(coarse_g.size()) ||
      p_g.cols() != static_cast<Eigen::Index>(fine_g.size())) {
    throw Error(ErrorCode::IndexError, "transition matrix is not indexed by the G outcome sets");
  }
  if (!coarse_f.is_subset_of(coarse_g) || !fine_f.is_subset_of(fine_g)) {
    throw Error(ErrorCode::IndexError, "F outcome sets must be contained in the G outcome sets");
  }
  auto position = [](const OutcomeSet& s, std::size_t label) {
    return static_cast<Eigen::Index>(std::lower_bound(s.indices.begin(), s.indices.end(), label) -
                                     s.indices.begin());
  };
  RMatrix sub(static_cast<Eigen::Index>(coarse_f.size()), static_cast<Eigen::Index>(fine_f.size()));
  for (std::size_t jj = 0; jj < coarse_f.size(); ++jj) {
    for (std::size_t ii = 0; ii < fine_f.size(); ++ii) {
      sub(static_cast<Eigen::Index>(jj), static_cast<Eigen::Index>(ii)) =
          p_g(position(coarse_g, coarse_f.indices[jj]), position(fine_g, fine_f.indices[ii]));
    }
  }
  for (Eigen::Index i = 0; i < sub.cols(); ++i) {
    const Real s = sub.col(i).sum();
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream os;
      os << "restricted column " << i << " sums to " << s;
      throw Error(ErrorCode::BrokenColumnSum, os.str());
    }
  }
  return StochasticMatrix::from(sub, tol);
}

CoarsenResult coarsen(const Measurement& fine, const StochasticMatrix& p, const Tolerances& tol) {
  if (p.cols() != static_cast<Eigen::Index>(fine.size())) {
    throw Error(ErrorCode::ShapeMismatch, "transition matrix columns must match the fine outcomes");
  }
  const auto fine_el = elements_of(fine);
  CoarsenResult out;
  std::vector<CMatrix> elements;
  for (Eigen::Index j = 0; j < p.rows(); ++j) {
    CMatrix e = mixture(fine_el, p.matrix(), j);
    if (e.norm() <= tol.zero) {
      out.dropped_rows.push_back(static_cast<std::size_t>(j));
      continue;
    }
    elements.push_back(std::move(e));
    out.kept_rows.push_back(static_cast<std::size_t>(j));
  }
  out.measurement = validate_measurement(elements, std::nullopt, tol);
  return out;
}

Real thm2_equality_defect(const StochasticMatrix& p, const WeightedDistribution& w) {
  const WeightedDistribution out = push_forward(p, w);
  Real worst = 0.0;
  for (Eigen::Index j = 0; j < p.rows(); ++j) {
    for (Eigen::Index i = 0; i < p.cols(); ++i) {
      const Real pji = p(j, i);
      const Real lhs = pji * w.probs()(i) * out.volumes()(j);
      const Real rhs = pji * w.volumes()(i) * out.probs()(j);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

bool thm2_equality_condition(const StochasticMatrix& p, const WeightedDistribution& w, Real tol) {
  return thm2_equality_defect(p, w) <= tol;
}

}  // namespace povm

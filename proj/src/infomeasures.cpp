#include "povm/infomeasures.hpp"

#include <algorithm>

namespace povm {

Real s_obs_classical(const WeightedDistribution& w) { return s_obs(w.probs(), w.volumes()); }

Real kl_divergence(const RVector& p, const RVector& q, Real tol) {
  if (p.size() != q.size()) throw Error(ErrorCode::LengthMismatch, "distributions differ in length");
  for (const RVector* v : {&p, &q}) {
    if (v->size() == 0 || v->minCoeff() < 0.0 || std::abs(v->sum() - 1.0) > tol) {
      std::ostringstream os;
      os << "distribution is not normalized (sum " << v->sum() << ")";
      throw Error(ErrorCode::NotNormalized, os.str());
    }
  }
  return kl_divergence_unchecked(p, q);
}

Real mutual_information(const JointDistribution& joint) {
  return mutual_information_unchecked(joint.matrix());
}

Real von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  Real s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const Real l = es.eigenvalues()(k);
    if (l > kZeroProbability) s -= l * std::log(l);
  }
  return s;
}

EntropyReport observational_entropy(const Measurement& c, const DensityMatrix& rho) {
  const WeightedDistribution w = outcome_probabilities(c, rho);
  EntropyReport r;
  r.probs = w.probs();
  r.volumes = w.volumes();
  r.s_obs = s_obs_classical(w);
  r.s_vn = von_neumann_entropy(rho);
  r.ln_vtot = std::log(w.total_volume());
  r.d_kl_to_uniform = kl_divergence_unchecked(w.probs(), w.uniform_probs());
  const Real gap = std::abs(r.s_obs - (r.ln_vtot - r.d_kl_to_uniform));
  if (gap > 1e-9) {
    std::ostringstream os;
    os << "S_obs decomposition off by " << gap;
    throw Error(ErrorCode::InternalInvariant, os.str());
  }
  return r;
}

JointDistribution measurement_state_joint(const Measurement& c, const DensityMatrix& rho) {
  if (c.dim() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement and state dimensions differ");
  }
  const EigenSystem es = hermitian_eigensystem(rho.matrix());
  const Eigen::Index d = rho.dim();
  const auto n = static_cast<Eigen::Index>(c.size());
  RMatrix joint(d, n);
  for (Eigen::Index x = 0; x < d; ++x) {
    const CVector& v = es.vectors.col(x);
    const Real px = std::max<Real>((v.adjoint() * rho.matrix() * v)(0).real(), 0.0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real pix = (v.adjoint() * c.element(static_cast<std::size_t>(i)) * v)(0).real();
      if (pix < -1e-9) throw Error(ErrorCode::NotPSD, "negative conditional probability");
      joint(x, i) = std::max<Real>(pix, 0.0) * px;
    }
  }
  return JointDistribution::from(joint);
}

WeightedDistribution push_forward(const StochasticMatrix& p, const WeightedDistribution& w) {
  if (p.cols() != w.size()) {
    std::ostringstream os;
    os << "transition matrix has " << p.cols() << " columns for " << w.size() << " outcomes";
    throw Error(ErrorCode::ShapeMismatch, os.str());
  }
  RVector probs = p.matrix() * w.probs();
  RVector vols = p.matrix() * w.volumes();
  if (vols.minCoeff() <= 0.0) {
    throw Error(ErrorCode::ShapeMismatch, "transition matrix has an all-zero row");
  }
  return WeightedDistribution::from(probs, vols, 1e-9);
}

}  // namespace povm

#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "povm/distribution.hpp"
#include "povm/qmcore.hpp"
#include "povm/types.hpp"

namespace povm {

// All entropies and divergences are in nats.

struct EntropyReport {
  Real s_obs = 0.0;
  Real s_vn = 0.0;
  Real ln_vtot = 0.0;
  Real d_kl_to_uniform = 0.0;
  RVector probs;
  RVector volumes;
};

/// Σ p_i (ln V_i − ln p_i), zero-probability terms dropped.
template <typename ProbExpr, typename VolExpr>
Real s_obs(const Eigen::MatrixBase<ProbExpr>& p, const Eigen::MatrixBase<VolExpr>& v) {
  Real s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Real pi = p(i);
    if (pi <= kZeroProbability) continue;
    s += pi * (std::log(v(i)) - std::log(pi));
  }
  return s;
}

/// D_KL[p‖q]; +∞ when p puts mass where q has none. Inputs are not validated here.
template <typename P, typename Q>
Real kl_divergence_unchecked(const Eigen::MatrixBase<P>& p, const Eigen::MatrixBase<Q>& q) {
  Real d = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const Real pi = p(i);
    if (pi <= kZeroProbability) continue;
    if (q(i) <= kZeroProbability) return std::numeric_limits<Real>::infinity();
    d += pi * (std::log(pi) - std::log(q(i)));
  }
  return d;
}

/// Σ_xy p_xy ln(p_xy / (p_x p_y)) over a raw non-negative matrix.
template <typename M>
Real mutual_information_unchecked(const Eigen::MatrixBase<M>& joint) {
  const RVector px = joint.rowwise().sum();
  const RVector py = joint.colwise().sum().transpose();
  Real info = 0.0;
  for (Eigen::Index x = 0; x < joint.rows(); ++x) {
    for (Eigen::Index y = 0; y < joint.cols(); ++y) {
      const Real pxy = joint(x, y);
      if (pxy <= kZeroProbability) continue;
      info += pxy * (std::log(pxy) - std::log(px(x)) - std::log(py(y)));
    }
  }
  return info;
}

Real s_obs_classical(const WeightedDistribution& w);

/// Validated D_KL: throws LengthMismatch / NotNormalized.
Real kl_divergence(const RVector& p, const RVector& q, Real tol = 1e-10);

Real mutual_information(const JointDistribution& joint);

Real von_neumann_entropy(const DensityMatrix& rho);

/// S_C(ρ) with the decomposition ln V_tot − D_KL[p‖p^id] checked to 1e−9.
EntropyReport observational_entropy(const Measurement& c, const DensityMatrix& rho);

/// p_xi = ⟨x|Π_i|x⟩⟨x|ρ|x⟩ over the phase-fixed eigenbasis {|x⟩} of ρ.
JointDistribution measurement_state_joint(const Measurement& c, const DensityMatrix& rho);

/// (P p, P V).
WeightedDistribution push_forward(const StochasticMatrix& p, const WeightedDistribution& w);

}  // namespace povm

#pragma once

#include "povm/types.hpp"

namespace povm {

/// Outcome probabilities p_i paired with volumes V_i.
class WeightedDistribution {
 public:
  /// Requires equal lengths, p ≥ 0, Σp = 1 within `tol`, every V_i > 0.
  static WeightedDistribution from(const RVector& probs, const RVector& volumes, Real tol = 1e-10);

  const RVector& probs() const { return probs_; }
  const RVector& volumes() const { return volumes_; }
  Eigen::Index size() const { return probs_.size(); }
  Real total_volume() const { return volumes_.sum(); }
  /// p_i^id = V_i / Σ V.
  RVector uniform_probs() const { return volumes_ / total_volume(); }

 private:
  WeightedDistribution(RVector p, RVector v) : probs_(std::move(p)), volumes_(std::move(v)) {}
  RVector probs_;
  RVector volumes_;
};

/// Joint distribution p_xy (rows x, columns y).
class JointDistribution {
 public:
  static JointDistribution from(const RMatrix& p, Real tol = 1e-10);

  const RMatrix& matrix() const { return p_; }
  RVector row_marginal() const { return p_.rowwise().sum(); }
  RVector col_marginal() const { return p_.colwise().sum().transpose(); }

 private:
  explicit JointDistribution(RMatrix p) : p_(std::move(p)) {}
  RMatrix p_;
};

/// Left-stochastic matrix P_ji = p(j|i): non-negative, unit column sums.
class StochasticMatrix {
 public:
  /// Entries ≥ −1e−12 are accepted and clamped to 0; columns must sum to 1 within `tol`.
  static StochasticMatrix from(const RMatrix& p, Real tol = 1e-8);
  static StochasticMatrix identity(Eigen::Index n);
  /// Single row of ones: merges every input into one output.
  static StochasticMatrix merge_all(Eigen::Index n);

  const RMatrix& matrix() const { return p_; }
  Eigen::Index rows() const { return p_.rows(); }
  Eigen::Index cols() const { return p_.cols(); }
  Real operator()(Eigen::Index j, Eigen::Index i) const { return p_(j, i); }

 private:
  explicit StochasticMatrix(RMatrix p) : p_(std::move(p)) {}
  RMatrix p_;
};

}  // namespace povm

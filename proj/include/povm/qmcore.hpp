#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "povm/distribution.hpp"
#include "povm/types.hpp"

namespace povm {

/// Smallest eigenvalue of the Hermitian part of `a`.
Real min_eigenvalue(const CMatrix& a);

/// ‖a − a†‖_F
Real hermiticity_defect(const CMatrix& a);

/// Outer product |u⟩⟨v|.
inline CMatrix ketbra(const CVector& u, const CVector& v) { return u * v.adjoint(); }

/// Computational basis vector |k⟩ in dimension `dim`.
CVector basis_ket(Eigen::Index dim, Eigen::Index k);

class HermitianOperator {
 public:
  /// Validates ‖A − A†‖_F ≤ tol and stores the exactly Hermitian part.
  static HermitianOperator from(const CMatrix& a, Real tol = default_tolerances().herm);

  const CMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  Real trace() const { return m_.trace().real(); }

 private:
  explicit HermitianOperator(CMatrix m) : m_(std::move(m)) {}
  CMatrix m_;
};

class DensityMatrix {
 public:
  static DensityMatrix from(const CMatrix& rho, const Tolerances& tol = default_tolerances());
  static DensityMatrix pure(const CVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const CMatrix& matrix() const { return op_.matrix(); }
  Eigen::Index dim() const { return op_.dim(); }

 private:
  explicit DensityMatrix(HermitianOperator op) : op_(std::move(op)) {}
  HermitianOperator op_;
};

class Projector {
 public:
  static Projector from(const CMatrix& p, const Tolerances& tol = default_tolerances());
  /// Projector Σ|v⟩⟨v| onto the span of the orthonormal columns of `basis`.
  static Projector onto(const CMatrix& basis);

  const CMatrix& matrix() const { return op_.matrix(); }
  Eigen::Index dim() const { return op_.dim(); }
  Eigen::Index rank() const { return rank_; }

 private:
  Projector(HermitianOperator op, Eigen::Index rank) : op_(std::move(op)), rank_(rank) {}
  HermitianOperator op_;
  Eigen::Index rank_;
};

/// A subspace of C^d stored as an orthonormal basis (columns) plus its projector.
class Subspace {
 public:
  /// Requires Gram(basis) = 1 within tol.orth.
  static Subspace from_basis(const CMatrix& basis, const Tolerances& tol = default_tolerances());
  /// Orthonormalizes arbitrary spanning vectors (columns); rank decided at 1e-10.
  static Subspace span(const CMatrix& vectors);
  static Subspace full(Eigen::Index dim);

  const CMatrix& basis() const { return basis_; }
  const Projector& projector() const { return projector_; }
  Eigen::Index ambient_dim() const { return basis_.rows(); }
  Eigen::Index dim() const { return basis_.cols(); }

 private:
  Subspace(CMatrix basis, Projector p) : basis_(std::move(basis)), projector_(std::move(p)) {}
  CMatrix basis_;
  Projector projector_;
};

/// kraus[i][m] = K_im.
using KrausSet = std::vector<std::vector<CMatrix>>;

class Measurement {
 public:
  Eigen::Index dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const CMatrix& element(std::size_t i) const { return elements_[i].matrix(); }
  const std::vector<HermitianOperator>& elements() const { return elements_; }
  bool has_kraus() const { return kraus_.has_value(); }
  const KrausSet& kraus() const;
  const std::optional<KrausSet>& maybe_kraus() const { return kraus_; }

  /// Volumes V_i = Tr Π_i.
  RVector volumes() const;
  bool is_projective(Real tol = default_tolerances().proj) const;

 private:
  friend Measurement validate_measurement(const std::vector<CMatrix>&, const std::optional<KrausSet>&,
                                          const Tolerances&);
  Eigen::Index dim_ = 0;
  std::vector<HermitianOperator> elements_;
  std::optional<KrausSet> kraus_;
};

/// Checks Hermiticity, positivity, completeness, non-zero elements and Kraus
/// consistency; throws povm::Error naming the first violated invariant.
Measurement validate_measurement(const std::vector<CMatrix>& elements,
                                 const std::optional<KrausSet>& kraus = std::nullopt,
                                 const Tolerances& tol = default_tolerances());

/// Projective measurement with one Kraus operator (the projector) per outcome.
Measurement projective_measurement(const std::vector<CMatrix>& projectors,
                                   const Tolerances& tol = default_tolerances());

/// Sorted (descending) eigenvalues with phase-fixed eigenvectors as columns.
/// Each eigenvector has its first non-negligible component real and positive.
struct EigenSystem {
  RVector values;
  CMatrix vectors;
};

EigenSystem hermitian_eigensystem(const CMatrix& a);

struct Eigenspace {
  Real value;
  Projector projector;
};

/// Spectral decomposition with eigenvalues closer than
/// degeneracy_tol · max(1, spectral range) merged into one eigenspace.
std::vector<Eigenspace> eigendecompose(const HermitianOperator& a,
                                       Real degeneracy_tol = default_tolerances().degeneracy);

/// C_ρ: the projective measurement onto the eigenspaces of ρ.
Measurement measurement_from_state(const DensityMatrix& rho,
                                   const Tolerances& tol = default_tolerances());

/// p_i = Tr[Π_i ρ] (clamped to [0, 1]) together with V_i = Tr Π_i.
WeightedDistribution outcome_probabilities(const Measurement& c, const DensityMatrix& rho);

struct ComposedMeasurement {
  Measurement measurement;
  /// labels[k] = (i, j) for the k-th kept element.
  std::vector<std::pair<std::size_t, std::size_t>> labels;
  /// (i, j) pairs whose product element was numerically zero.
  std::vector<std::pair<std::size_t, std::size_t>> dropped;
};

/// Measurement (C1, C2): first C1 then C2, Π_ij = Σ_n K1_in† Π2_j K1_in.
/// Kraus operators K2_jm K1_in are attached when C2 carries Kraus operators.
ComposedMeasurement compose_measurements(const Measurement& first, const Measurement& second,
                                         const Tolerances& tol = default_tolerances());

struct PostMeasurement {
  DensityMatrix state;
  Real probability;
};

PostMeasurement post_measurement_state(const KrausSet& kraus, std::size_t outcome,
                                       const DensityMatrix& rho,
                                       const Tolerances& tol = default_tolerances());

struct TracePairing {
  Real trace;
  bool is_zero_product;
  /// ‖ΠP‖_F and ‖PΠ‖_F, reported for inspection.
  Real left_norm;
  Real right_norm;
  /// sqrt(λ_max(Π) · max(Tr[ΠP], 0)): upper bound on both norms.
  Real norm_bound;
};

TracePairing trace_pairing(const CMatrix& positive, const Projector& p,
                           Real tol = default_tolerances().zero);

}  // namespace povm

#include "povm/qmcore.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace povm {

namespace {

CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) / 2.0; }

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    std::ostringstream os;
    os << what << " must be a non-empty square matrix, got " << a.rows() << "x" << a.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

Real trace_product(const CMatrix& a, const CMatrix& b) {
  // Re Tr[AB] without forming the product.
  return a.cwiseProduct(b.transpose()).sum().real();
}

}  // namespace

Real min_eigenvalue(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Real hermiticity_defect(const CMatrix& a) { return (a - a.adjoint()).norm(); }

CVector basis_ket(Eigen::Index dim, Eigen::Index k) {
  CVector v = CVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

HermitianOperator HermitianOperator::from(const CMatrix& a, Real tol) {
  require_square(a, "operator");
  if (!a.allFinite()) throw Error(ErrorCode::NonHermitian, "operator has non-finite entries");
  const Real defect = hermiticity_defect(a);
  if (defect > tol) {
    std::ostringstream os;
    os << "||A - A^dagger||_F = " << defect << " exceeds " << tol;
    throw Error(ErrorCode::NonHermitian, os.str());
  }
  return HermitianOperator(hermitian_part(a));
}

DensityMatrix DensityMatrix::from(const CMatrix& rho, const Tolerances& tol) {
  auto op = HermitianOperator::from(rho, tol.herm);
  const Real lmin = min_eigenvalue(op.matrix());
  if (lmin < -tol.psd) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lmin;
    throw Error(ErrorCode::NotPSD, os.str());
  }
  if (std::abs(op.trace() - 1.0) > tol.trace) {
    std::ostringstream os;
    os << "density matrix has trace " << op.trace();
    throw Error(ErrorCode::NotDensity, os.str());
  }
  return DensityMatrix(std::move(op));
}

DensityMatrix DensityMatrix::pure(const CVector& psi) {
  const Real n = psi.norm();
  if (n == 0.0) throw Error(ErrorCode::NotDensity, "zero state vector");
  const CVector u = psi / n;
  return DensityMatrix::from(ketbra(u, u));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix::from(CMatrix::Identity(dim, dim) / static_cast<Real>(dim));
}

Projector Projector::from(const CMatrix& p, const Tolerances& tol) {
  auto op = HermitianOperator::from(p, tol.herm);
  const CMatrix& m = op.matrix();
  const Real idem = (m * m - m).norm();
  if (idem > tol.proj) {
    std::ostringstream os;
    os << "||P^2 - P||_F = " << idem;
    throw Error(ErrorCode::NotProjective, os.str());
  }
  const Real tr = op.trace();
  const Real rank = std::round(tr);
  if (std::abs(tr - rank) > std::max(tol.trace, tol.proj)) {
    std::ostringstream os;
    os << "projector trace " << tr << " is not an integer";
    throw Error(ErrorCode::NotProjective, os.str());
  }
  return Projector(std::move(op), static_cast<Eigen::Index>(rank));
}

Projector Projector::onto(const CMatrix& basis) {
  return Projector(HermitianOperator::from(hermitian_part(basis * basis.adjoint()), 1.0),
                   basis.cols());
}

Subspace Subspace::from_basis(const CMatrix& basis, const Tolerances& tol) {
  if (basis.cols() == 0 || basis.rows() < basis.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "subspace basis must have 1..dim vectors");
  }
  const CMatrix gram = basis.adjoint() * basis;
  const Real defect = (gram - CMatrix::Identity(basis.cols(), basis.cols())).norm();
  if (defect > tol.orth) {
    std::ostringstream os;
    os << "basis Gram matrix differs from identity by " << defect;
    throw Error(ErrorCode::NotOrthonormal, os.str());
  }
  return Subspace(basis, Projector::onto(basis));
}

Subspace Subspace::span(const CMatrix& vectors) {
  Eigen::ColPivHouseholderQR<CMatrix> qr(vectors);
  qr.setThreshold(1e-10);
  const Eigen::Index r = qr.rank();
  if (r == 0) throw Error(ErrorCode::DimensionMismatch, "vectors span the zero subspace");
  CMatrix q = qr.householderQ() * CMatrix::Identity(vectors.rows(), r);
  return Subspace(q, Projector::onto(q));
}

Subspace Subspace::full(Eigen::Index dim) {
  CMatrix id = CMatrix::Identity(dim, dim);
  return Subspace(id, Projector::onto(id));
}

const KrausSet& Measurement::kraus() const {
  if (!kraus_) throw Error(ErrorCode::MissingKraus, "measurement has no Kraus operators");
  return *kraus_;
}

RVector Measurement::volumes() const {
  RVector v(static_cast<Eigen::Index>(size()));
  for (std::size_t i = 0; i < size(); ++i) v(static_cast<Eigen::Index>(i)) = elements_[i].trace();
  return v;
}

bool Measurement::is_projective(Real tol) const {
  return std::all_of(elements_.begin(), elements_.end(), [tol](const HermitianOperator& e) {
    const CMatrix& m = e.matrix();
    return (m * m - m).norm() <= tol;
  });
}

Measurement validate_measurement(const std::vector<CMatrix>& elements,
                                 const std::optional<KrausSet>& kraus, const Tolerances& tol) {
  if (elements.empty()) throw Error(ErrorCode::IncompleteSum, "measurement has no elements");
  const Eigen::Index d = elements.front().rows();
  Measurement c;
  c.dim_ = d;
  CMatrix total = CMatrix::Zero(d, d);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const CMatrix& e = elements[i];
    require_square(e, "POVM element");
    if (e.rows() != d) {
      std::ostringstream os;
      os << "element " << i << " has dimension " << e.rows() << ", expected " << d;
      throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    auto op = HermitianOperator::from(e, tol.herm);
    const Real lmin = min_eigenvalue(op.matrix());
    if (lmin < -tol.psd) {
      std::ostringstream os;
      os << "element " << i << " has eigenvalue " << lmin;
      throw Error(ErrorCode::NotPSD, os.str());
    }
    if (op.matrix().norm() <= tol.zero) {
      std::ostringstream os;
      os << "element " << i << " is zero";
      throw Error(ErrorCode::ZeroElement, os.str());
    }
    total += op.matrix();
    c.elements_.push_back(std::move(op));
  }
  const Real incomplete = (total - CMatrix::Identity(d, d)).norm();
  if (incomplete > tol.complete) {
    std::ostringstream os;
    os << "||sum Pi - 1||_F = " << incomplete;
    throw Error(ErrorCode::IncompleteSum, os.str());
  }
  if (kraus) {
    if (kraus->size() != elements.size()) {
      throw Error(ErrorCode::KrausMismatch, "Kraus set and POVM have different outcome counts");
    }
    for (std::size_t i = 0; i < kraus->size(); ++i) {
      const auto& ops = (*kraus)[i];
      if (ops.empty()) {
        std::ostringstream os;
        os << "outcome " << i << " has no Kraus operators";
        throw Error(ErrorCode::KrausMismatch, os.str());
      }
      CMatrix sum = CMatrix::Zero(d, d);
      for (const auto& k : ops) {
        if (k.rows() != d || k.cols() != d) {
          throw Error(ErrorCode::KrausMismatch, "Kraus operator has wrong shape");
        }
        sum += k.adjoint() * k;
      }
      const Real defect = (sum - c.elements_[i].matrix()).norm();
      if (defect > tol.complete) {
        std::ostringstream os;
        os << "outcome " << i << ": ||sum K^dagger K - Pi||_F = " << defect;
        throw Error(ErrorCode::KrausMismatch, os.str());
      }
    }
    c.kraus_ = kraus;
  }
  return c;
}

Measurement projective_measurement(const std::vector<CMatrix>& projectors, const Tolerances& tol) {
  KrausSet kraus;
  kraus.reserve(projectors.size());
  for (const auto& p : projectors) kraus.push_back({p});
  auto c = validate_measurement(projectors, kraus, tol);
  if (!c.is_projective(tol.proj)) throw Error(ErrorCode::NotProjective, "elements are not projectors");
  return c;
}

EigenSystem hermitian_eigensystem(const CMatrix& a) {
  require_square(a, "operator");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(a));
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::InternalInvariant, "eigensolver did not converge");
  }
  const Eigen::Index d = a.rows();
  EigenSystem out{RVector(d), CMatrix(d, d)};
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values(k) = es.eigenvalues()(d - 1 - k);
    CVector v = es.eigenvectors().col(d - 1 - k);
    for (Eigen::Index r = 0; r < d; ++r) {
      if (std::abs(v(r)) > 1e-10) {
        v *= std::conj(v(r)) / std::abs(v(r));
        v(r) = std::abs(v(r));
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

std::vector<Eigenspace> eigendecompose(const HermitianOperator& a, Real degeneracy_tol) {
  const EigenSystem es = hermitian_eigensystem(a.matrix());
  const Eigen::Index d = es.values.size();
  const Real range = es.values(0) - es.values(d - 1);
  const Real threshold = degeneracy_tol * std::max<Real>(1.0, range);

  std::vector<Eigenspace> out;
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= d; ++k) {
    if (k < d && es.values(k - 1) - es.values(k) <= threshold) continue;
    const Eigen::Index len = k - start;
    const Real value = es.values.segment(start, len).mean();
    out.push_back({value, Projector::onto(es.vectors.middleCols(start, len))});
    start = k;
  }
  return out;
}

Measurement measurement_from_state(const DensityMatrix& rho, const Tolerances& tol) {
  const auto spaces = eigendecompose(HermitianOperator::from(rho.matrix()), tol.degeneracy);
  std::vector<CMatrix> projectors;
  projectors.reserve(spaces.size());
  for (const auto& s : spaces) projectors.push_back(s.projector.matrix());
  return projective_measurement(projectors, tol);
}

WeightedDistribution outcome_probabilities(const Measurement& c, const DensityMatrix& rho) {
  if (c.dim() != rho.dim()) {
    std::ostringstream os;
    os << "measurement dimension " << c.dim() << " vs state dimension " << rho.dim();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const auto n = static_cast<Eigen::Index>(c.size());
  RVector p(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real raw = trace_product(c.element(static_cast<std::size_t>(i)), rho.matrix());
    if (raw < -1e-9) {
      std::ostringstream os;
      os << "outcome " << i << " has probability " << raw;
      throw Error(ErrorCode::NotPSD, os.str());
    }
    p(i) = std::clamp(raw, 0.0, 1.0);
  }
  return WeightedDistribution::from(p, c.volumes());
}

ComposedMeasurement compose_measurements(const Measurement& first, const Measurement& second,
                                         const Tolerances& tol) {
  if (!first.has_kraus()) {
    throw Error(ErrorCode::MissingKraus, "first measurement needs Kraus operators to be composed");
  }
  if (first.dim() != second.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "composed measurements must share a dimension");
  }
  const Eigen::Index d = first.dim();
  const KrausSet& k1 = first.kraus();

  ComposedMeasurement out;
  std::vector<CMatrix> elements;
  KrausSet kraus;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      CMatrix e = CMatrix::Zero(d, d);
      for (const auto& k : k1[i]) e += k.adjoint() * second.element(j) * k;
      e = hermitian_part(e);
      if (e.norm() <= tol.zero) {
        out.dropped.emplace_back(i, j);
        continue;
      }
      elements.push_back(std::move(e));
      out.labels.emplace_back(i, j);
      if (second.has_kraus()) {
        std::vector<CMatrix> ops;
        for (const auto& ka : k1[i]) {
          for (const auto& kb : second.kraus()[j]) ops.push_back(kb * ka);
        }
        kraus.push_back(std::move(ops));
      }
    }
  }
  out.measurement = validate_measurement(
      elements, second.has_kraus() ? std::optional<KrausSet>(std::move(kraus)) : std::nullopt, tol);
  return out;
}

PostMeasurement post_measurement_state(const KrausSet& kraus, std::size_t outcome,
                                       const DensityMatrix& rho, const Tolerances& tol) {
  if (outcome >= kraus.size()) {
    throw Error(ErrorCode::IndexError, "outcome index out of range");
  }
  const Eigen::Index d = rho.dim();
  CMatrix updated = CMatrix::Zero(d, d);
  for (const auto& k : kraus[outcome]) {
    if (k.cols() != d || k.rows() != d) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator does not act on the state");
    }
    updated += k * rho.matrix() * k.adjoint();
  }
  const Real p = updated.trace().real();
  if (p <= tol.zero) {
    std::ostringstream os;
    os << "outcome " << outcome << " has probability " << p;
    throw Error(ErrorCode::ZeroProbabilityOutcome, os.str());
  }
  return {DensityMatrix::from(hermitian_part(updated) / p, tol), p};
}

TracePairing trace_pairing(const CMatrix& positive, const Projector& p, Real tol) {
  require_square(positive, "positive operator");
  if (positive.rows() != p.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operator and projector dimensions differ");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(positive), Eigen::EigenvaluesOnly);
  const Real lmin = es.eigenvalues().minCoeff();
  if (lmin < -default_tolerances().psd) {
    std::ostringstream os;
    os << "operator has eigenvalue " << lmin;
    throw Error(ErrorCode::NotPSD, os.str());
  }
  const Real lmax = std::max<Real>(es.eigenvalues().maxCoeff(), 0.0);
  TracePairing out{};
  out.trace = trace_product(positive, p.matrix());
  out.is_zero_product = out.trace <= tol;
  out.left_norm = (positive * p.matrix()).norm();
  out.right_norm = (p.matrix() * positive).norm();
  out.norm_bound = std::sqrt(lmax * std::max<Real>(out.trace, 0.0));
  return out;
}

}  // namespace povm

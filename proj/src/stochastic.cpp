#include <cmath>
#include <sstream>

#include "povm/distribution.hpp"

namespace povm {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::IncompleteSum: return "IncompleteSum";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::KrausMismatch: return "KrausMismatch";
    case ErrorCode::MissingKraus: return "MissingKraus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotDensity: return "NotDensity";
    case ErrorCode::NotProjective: return "NotProjective";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::ZeroProbabilityOutcome: return "ZeroProbabilityOutcome";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotStochastic: return "NotStochastic";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::EmptyOutcomeSet: return "EmptyOutcomeSet";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::BrokenColumnSum: return "BrokenColumnSum";
    case ErrorCode::InvalidRank: return "InvalidRank";
    case ErrorCode::SingularSum: return "SingularSum";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

WeightedDistribution WeightedDistribution::from(const RVector& probs, const RVector& volumes,
                                                Real tol) {
  if (probs.size() != volumes.size()) {
    throw Error(ErrorCode::LengthMismatch, "probs and volumes differ in length");
  }
  if (probs.size() == 0) {
    throw Error(ErrorCode::InvalidDistribution, "empty distribution");
  }
  if (!probs.allFinite() || !volumes.allFinite()) {
    throw Error(ErrorCode::InvalidDistribution, "non-finite entry");
  }
  if (probs.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidDistribution, "negative probability");
  }
  if (std::abs(probs.sum() - 1.0) > tol) {
    std::ostringstream os;
    os << "probabilities sum to " << probs.sum();
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  if (volumes.minCoeff() <= 0.0) {
    throw Error(ErrorCode::InvalidDistribution, "volumes must be positive");
  }
  return WeightedDistribution(probs, volumes);
}

JointDistribution JointDistribution::from(const RMatrix& p, Real tol) {
  if (p.size() == 0 || !p.allFinite()) {
    throw Error(ErrorCode::InvalidDistribution, "empty or non-finite joint distribution");
  }
  if (p.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidDistribution, "negative joint probability");
  }
  if (std::abs(p.sum() - 1.0) > tol) {
    std::ostringstream os;
    os << "joint probabilities sum to " << p.sum();
    throw Error(ErrorCode::NotNormalized, os.str());
  }
  return JointDistribution(p);
}

StochasticMatrix StochasticMatrix::from(const RMatrix& p, Real tol) {
  if (p.rows() == 0 || p.cols() == 0 || !p.allFinite()) {
    throw Error(ErrorCode::NotStochastic, "empty or non-finite matrix");
  }
  if (p.minCoeff() < -1e-12) {
    std::ostringstream os;
    os << "negative entry " << p.minCoeff();
    throw Error(ErrorCode::NotStochastic, os.str());
  }
  RMatrix clamped = p.cwiseMax(0.0);
  for (Eigen::Index i = 0; i < clamped.cols(); ++i) {
    const Real s = clamped.col(i).sum();
    if (std::abs(s - 1.0) > tol) {
      std::ostringstream os;
      os << "column " << i << " sums to " << s;
      throw Error(ErrorCode::NotStochastic, os.str());
    }
  }
  return StochasticMatrix(std::move(clamped));
}

StochasticMatrix StochasticMatrix::identity(Eigen::Index n) {
  return StochasticMatrix(RMatrix::Identity(n, n));
}

StochasticMatrix StochasticMatrix::merge_all(Eigen::Index n) {
  return StochasticMatrix(RMatrix::Ones(1, n));
}

}  // namespace povm

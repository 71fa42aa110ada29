#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace povm {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using CMatrix = DenseMatrix<Complex>;
using CVector = DenseVector<Complex>;
using RMatrix = DenseMatrix<Real>;
using RVector = DenseVector<Real>;

enum class ErrorCode {
  NonHermitian,
  NotPSD,
  IncompleteSum,
  ZeroElement,
  KrausMismatch,
  MissingKraus,
  DimensionMismatch,
  NotDensity,
  NotProjective,
  NotOrthonormal,
  ZeroProbabilityOutcome,
  LengthMismatch,
  NotNormalized,
  InvalidDistribution,
  ShapeMismatch,
  NotStochastic,
  IterationLimit,
  EmptyOutcomeSet,
  IndexError,
  BrokenColumnSum,
  InvalidRank,
  SingularSum,
  UnknownSuite,
  InvalidRange,
  ParseError,
  InternalInvariant,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code next to
// the human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Tolerances {
  Real herm = 1e-10;
  Real psd = 1e-10;
  Real proj = 1e-10;
  Real complete = 1e-10;
  Real trace = 1e-10;
  Real zero = 1e-10;
  Real orth = 1e-10;
  Real degeneracy = 1e-8;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

// Threshold below which a probability is treated as exactly zero in 0 ln 0 terms.
inline constexpr Real kZeroProbability = 1e-14;

}  // namespace povm

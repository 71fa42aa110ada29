#include "povm/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace povm {

namespace {

constexpr int kMaxDraws = 20;
constexpr Real kMaxCondition = 1e6;

// f(A) for Hermitian PSD A, with eigenvalues clamped at zero.
template <class F>
CMatrix psd_function(const CMatrix& a, F f) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const RVector lam = es.eigenvalues().cwiseMax(0.0).unaryExpr(f);
  CMatrix out = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().adjoint();
  return (out + out.adjoint()) * 0.5;
}

Real condition_number(const CMatrix& s) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(s, Eigen::EigenvaluesOnly);
  const Real lo = es.eigenvalues().minCoeff();
  return lo <= 0.0 ? std::numeric_limits<Real>::infinity() : es.eigenvalues().maxCoeff() / lo;
}

CMatrix hermitian_part(const CMatrix& a) { return (a + a.adjoint()) * 0.5; }

}  // namespace

Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng) {
  std::uniform_int_distribution<Eigen::Index> dist(lo, hi);
  return dist(rng);
}

CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<Real> n(0.0, std::sqrt(0.5));
  CMatrix out(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const Real re = n(rng);
      out(r, c) = Complex(re, n(rng));
    }
  }
  return out;
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  Eigen::HouseholderQR<CMatrix> qr(gaussian_matrix(dim, dim, rng));
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Real mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

RVector random_simplex(Eigen::Index n, Rng& rng) {
  std::exponential_distribution<Real> e(1.0);
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = e(rng);
  return v / v.sum();
}

DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  if (rank < 1 || rank > dim) {
    std::ostringstream os;
    os << "rank " << rank << " outside [1, " << dim << "]";
    throw Error(ErrorCode::InvalidRank, os.str());
  }
  const CMatrix b = gaussian_matrix(dim, rank, rng);
  CMatrix rho = b * b.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from(hermitian_part(rho));
}

DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density_matrix(dim, rank, rng);
}

Measurement random_povm(Eigen::Index dim, Eigen::Index n_outcomes, Rng& rng,
                        Eigen::Index element_rank) {
  if (n_outcomes < 1) throw Error(ErrorCode::InvalidRange, "a measurement needs an outcome");
  if (element_rank <= 0 || element_rank > dim) element_rank = dim;
  if (n_outcomes == 1) {
    const CMatrix id = CMatrix::Identity(dim, dim);
    return validate_measurement({id}, KrausSet{{id}});
  }
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<CMatrix> a;
    CMatrix s = CMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < n_outcomes; ++i) {
      const CMatrix b = gaussian_matrix(dim, element_rank, rng);
      a.push_back(b * b.adjoint());
      s += a.back();
    }
    if (condition_number(s) > kMaxCondition) continue;
    const CMatrix s_inv_half = psd_function(s, [](Real l) { return 1.0 / std::sqrt(l); });
    std::vector<CMatrix> elements;
    KrausSet kraus;
    for (const auto& ai : a) {
      elements.push_back(hermitian_part(s_inv_half * ai * s_inv_half));
      kraus.push_back({psd_function(elements.back(), [](Real l) { return std::sqrt(l); })});
    }
    return validate_measurement(elements, kraus);
  }
  throw Error(ErrorCode::SingularSum, "could not draw a well-conditioned POVM");
}

Measurement random_povm(Eigen::Index dim, Eigen::Index n_outcomes, std::uint64_t seed) {
  Rng rng(seed);
  return random_povm(dim, n_outcomes, rng);
}

Measurement random_instrument(Eigen::Index dim, Eigen::Index n_outcomes,
                              Eigen::Index kraus_per_outcome, Rng& rng) {
  if (n_outcomes < 1 || kraus_per_outcome < 1) {
    throw Error(ErrorCode::InvalidRange, "instrument needs outcomes and Kraus operators");
  }
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    std::vector<std::vector<CMatrix>> b(static_cast<std::size_t>(n_outcomes));
    CMatrix s = CMatrix::Zero(dim, dim);
    for (auto& outcome : b) {
      for (Eigen::Index m = 0; m < kraus_per_outcome; ++m) {
        outcome.push_back(gaussian_matrix(dim, dim, rng));
        s += outcome.back().adjoint() * outcome.back();
      }
    }
    if (condition_number(s) > kMaxCondition) continue;
    const CMatrix s_inv_half = psd_function(s, [](Real l) { return 1.0 / std::sqrt(l); });
    std::vector<CMatrix> elements;
    KrausSet kraus;
    for (const auto& outcome : b) {
      std::vector<CMatrix> ks;
      CMatrix pi = CMatrix::Zero(dim, dim);
      for (const auto& bm : outcome) {
        ks.push_back(bm * s_inv_half);
        pi += ks.back().adjoint() * ks.back();
      }
      elements.push_back(hermitian_part(pi));
      kraus.push_back(std::move(ks));
    }
    return validate_measurement(elements, kraus);
  }
  throw Error(ErrorCode::SingularSum, "could not draw a well-conditioned instrument");
}

Measurement random_projective(Eigen::Index dim, Eigen::Index n_outcomes, Rng& rng) {
  if (n_outcomes < 1 || n_outcomes > dim) {
    throw Error(ErrorCode::InvalidRange, "projective measurement needs 1..dim outcomes");
  }
  const CMatrix u = random_unitary(dim, rng);
  std::vector<Eigen::Index> group(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    group[static_cast<std::size_t>(k)] = k < n_outcomes ? k : uniform_index(0, n_outcomes - 1, rng);
  }
  std::shuffle(group.begin(), group.end(), rng);
  std::vector<CMatrix> projectors(static_cast<std::size_t>(n_outcomes), CMatrix::Zero(dim, dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    projectors[static_cast<std::size_t>(group[static_cast<std::size_t>(k)])] +=
        ketbra(u.col(k), u.col(k));
  }
  return projective_measurement(projectors);
}

StochasticMatrix random_left_stochastic(Eigen::Index m, Eigen::Index n, Rng& rng, bool zero_one) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidRange, "stochastic matrix needs m, n ≥ 1");
  RMatrix p = RMatrix::Zero(m, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (zero_one) {
      p(uniform_index(0, m - 1, rng), i) = 1.0;
    } else {
      p.col(i) = random_simplex(m, rng);
    }
  }
  return StochasticMatrix::from(p, 1e-12);
}

StochasticMatrix random_left_stochastic(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                                        bool zero_one) {
  Rng rng(seed);
  return random_left_stochastic(m, n, rng, zero_one);
}

Subspace random_subspace(Eigen::Index dim, Eigen::Index k, Rng& rng) {
  if (k < 1 || k > dim) throw Error(ErrorCode::InvalidRange, "subspace dimension out of range");
  return Subspace::from_basis(random_unitary(dim, rng).leftCols(k));
}

Subspace random_subspace_of(const Subspace& g, Eigen::Index k, Rng& rng) {
  if (k < 1 || k > g.dim()) throw Error(ErrorCode::InvalidRange, "subspace dimension out of range");
  return Subspace::from_basis(g.basis() * random_unitary(g.dim(), rng).leftCols(k));
}

DensityMatrix random_state_in(const Subspace& g, Rng& rng, Eigen::Index rank) {
  if (rank <= 0) rank = g.dim();
  const DensityMatrix local = random_density_matrix(g.dim(), rank, rng);
  const CMatrix rho = g.basis() * local.matrix() * g.basis().adjoint();
  return DensityMatrix::from(hermitian_part(rho));
}

}  // namespace povm

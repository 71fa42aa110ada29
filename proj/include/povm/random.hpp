#pragma once

#include <cstdint>
#include <random>

#include "povm/distribution.hpp"
#include "povm/qmcore.hpp"

namespace povm {

using Rng = std::mt19937_64;

/// Matrix of independent standard complex Gaussians (E|z|² = 1).
CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Gaussian matrix with the phase of R's diagonal removed).
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

/// Flat Dirichlet sample: normalized exponentials.
RVector random_simplex(Eigen::Index n, Rng& rng);

/// ρ = BB†/Tr[BB†] with B a dim × rank Gaussian matrix.
DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, Rng& rng);
DensityMatrix random_density_matrix(Eigen::Index dim, Eigen::Index rank, std::uint64_t seed);

/// Π_i = S^{-1/2} B_i B_i† S^{-1/2} with S = Σ B_i B_i†, Kraus K_i = Π_i^{1/2}.
/// element_rank = 0 means full rank. One outcome gives exactly the identity.
Measurement random_povm(Eigen::Index dim, Eigen::Index n_outcomes, Rng& rng,
                        Eigen::Index element_rank = 0);
Measurement random_povm(Eigen::Index dim, Eigen::Index n_outcomes, std::uint64_t seed);

/// Instrument with kraus_per_outcome non-Hermitian Kraus operators K_im = B_im S^{-1/2},
/// S = Σ B_im† B_im.
Measurement random_instrument(Eigen::Index dim, Eigen::Index n_outcomes,
                              Eigen::Index kraus_per_outcome, Rng& rng);

/// Projective measurement from a random orthonormal basis split into n_outcomes
/// non-empty groups (1 ≤ n_outcomes ≤ dim).
Measurement random_projective(Eigen::Index dim, Eigen::Index n_outcomes, Rng& rng);

/// Columns are flat-simplex samples, or a single 1 per column in 0/1 mode.
StochasticMatrix random_left_stochastic(Eigen::Index m, Eigen::Index n, Rng& rng,
                                        bool zero_one = false);
StochasticMatrix random_left_stochastic(Eigen::Index m, Eigen::Index n, std::uint64_t seed,
                                        bool zero_one = false);

/// Random k-dimensional subspace of C^dim.
Subspace random_subspace(Eigen::Index dim, Eigen::Index k, Rng& rng);

/// Random subspace of g with dimension k ≤ g.dim().
Subspace random_subspace_of(const Subspace& g, Eigen::Index k, Rng& rng);

/// Density matrix supported in g: a random state in the basis of g, embedded.
/// rank = 0 means full rank within g.
DensityMatrix random_state_in(const Subspace& g, Rng& rng, Eigen::Index rank = 0);

/// Uniform integer in [lo, hi].
Eigen::Index uniform_index(Eigen::Index lo, Eigen::Index hi, Rng& rng);

}  // namespace povm

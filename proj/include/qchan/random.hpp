#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qchan/linalg.hpp"

namespace qchan {

// All randomness flows through an explicitly seeded engine; nothing global.
using Rng = std::mt19937_64;

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix ginibre(int rows, int cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(int d, Rng& rng);

/// Random Hermitian matrix, entries O(1).
ComplexMatrix random_hermitian(int d, Rng& rng);

/// Uniform sample from the probability simplex (flat Dirichlet).
std::vector<double> dirichlet_uniform(int m, Rng& rng);

}  // namespace qchan

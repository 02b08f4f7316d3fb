#pragma once

#include <vector>

#include "qchan/algebra.hpp"
#include "qchan/channel.hpp"

namespace qchan {

/// Default width of the peripheral band: |lambda| >= 1 - kPeripheralTol.
/// Looser than the generic eps because eigenvalues of iterated numerical
/// channels drift.
inline constexpr double kPeripheralTol = 1e-6;

struct SpectralData {
  std::vector<Complex> eigenvalues;  // sorted by |.| desc, then arg asc
  std::vector<ComplexMatrix> right_eigenoperators;  // unit Frobenius norm
  std::vector<bool> peripheral_mask;
  double peripheral_tol = kPeripheralTol;

  int peripheral_count() const;
};

/// Eigenvalues and right eigenoperators of the d^2 x d^2 superoperator.
SpectralData spectrum(const Channel& e, double peripheral_tol = kPeripheralTol);

/// Spectral projection onto the peripheral invariant subspace, returned as
/// a channel. For a unital TP channel this is the idempotent conditional
/// expectation onto the span of the peripheral eigenoperators (the limit
/// object of the iterates along a recurrent subsequence); it is computed
/// directly from an ordered Schur form of the superoperator plus a
/// triangular Sylvester solve, and its CP/TP/unital/idempotence properties
/// are verified before returning.
Channel peripheral_projection(const Channel& e, Tolerance tol = {},
                              double peripheral_tol = kPeripheralTol);

/// True iff the stabilized multiplicative domain is trivial (= C I);
/// cross-checked against the peripheral eigenvalue count.
bool is_primitive(const Channel& e, Tolerance tol = {});

/// Burnside test: the Kraus family has no common nontrivial invariant
/// subspace iff the *-algebra it generates is all of M_d.
bool is_irreducible(const Channel& e, Tolerance tol = {});

}  // namespace qchan

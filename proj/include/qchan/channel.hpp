#pragma once

#include <optional>
#include <vector>

#include "qchan/linalg.hpp"
#include "qchan/random.hpp"

namespace qchan {

/// Three-valued verification state of a channel property.
enum class Tri : signed char { unchecked = -1, no = 0, yes = 1 };

struct ChannelFlags {
  Tri cp = Tri::unchecked;
  Tri tp = Tri::unchecked;
  Tri unital = Tri::unchecked;
};

/// Choi matrix of a linear map, block (i,j) of the d_in x d_in grid holds
/// E(E_ij). Stored unnormalized (trace d_in for a TP map) unless
/// `normalized` is set, in which case it is the trace-1 state form.
struct ChoiMatrix {
  int d_in = 0;
  int d_out = 0;
  ComplexMatrix matrix;
  bool normalized = false;
};

/// A completely positive map on M_d in Kraus form, x -> sum_k K_k x K_k*.
///
/// Values are immutable: the Choi matrix, the superoperator and the
/// TP/unital flags are computed at construction (CP holds by construction).
class Channel {
 public:
  explicit Channel(std::vector<ComplexMatrix> kraus, Tolerance tol = {});

  int dim() const { return d_; }
  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }

  /// Unnormalized Choi matrix sum_ij E_ij (x) E(E_ij), d^2 x d^2.
  const ComplexMatrix& choi() const { return choi_; }

  /// Matrix of the map under column-stacking vec: S = sum_k conj(K_k) (x) K_k.
  const ComplexMatrix& superop() const { return superop_; }

  /// Flags established at construction with the construction tolerance.
  const ChannelFlags& flags() const { return flags_; }

  ComplexMatrix apply(const ComplexMatrix& x) const;

 private:
  int d_ = 0;
  std::vector<ComplexMatrix> kraus_;
  ComplexMatrix choi_;
  ComplexMatrix superop_;
  ChannelFlags flags_;
};

ChoiMatrix choi_of(const Channel& e);

/// Reconstructs a Kraus-form channel from a PSD Choi matrix via its
/// eigendecomposition. Throws NotAChannelError (carrying the offending
/// eigenvalue) when the Choi matrix fails the PSD gate at tol. Eigenvalues
/// below a near-machine relative cutoff are dropped, which keeps the
/// Choi/Kraus roundtrip tight (~1e-13) independently of tol.
Channel kraus_from_choi(const ComplexMatrix& choi, Tolerance tol = {});
Channel kraus_from_choi(const ChoiMatrix& c, Tolerance tol = {});

ComplexMatrix superoperator(const Channel& e);

/// Index reshuffle between the Choi matrix and the superoperator;
/// the permutation is its own inverse, so one function serves both ways.
ComplexMatrix choi_superop_reshuffle(const ComplexMatrix& m, int d);

/// (second o first)(x) = second(first(x)). The Kraus set of the composite
/// is re-canonicalized through the Choi eigendecomposition whenever the
/// naive product list would exceed d^2 operators.
Channel compose(const Channel& second, const Channel& first, Tolerance tol = {});

/// n-th iterate, n >= 1, by repeated squaring of the superoperator.
Channel power(const Channel& e, int n, Tolerance tol = {});

ComplexMatrix apply(const Channel& e, const ComplexMatrix& x);

/// Recomputes all three flags at the given tolerance: CP from Choi PSD,
/// TP from sum K*K = I, unital from sum KK* = I. Never throws.
ChannelFlags verify(const Channel& e, Tolerance tol = {});

/// Frobenius distance of the normalized (trace-1) Choi matrices.
/// A metric on channels; a documented proxy for the CB-norm distance.
double channel_distance(const Channel& e, const Channel& f);

/// Convex mix (1 - delta/2) Phi + (delta/2) Omega, delta in (0, 1].
/// The weight a = 1 - delta/2 is the contraction rate of the mix's
/// superoperator away from the identity direction.
struct DepolarizingMix {
  Channel base;
  double delta;
  double a;

  DepolarizingMix(Channel phi, double delta_value);
  Channel as_channel(Tolerance tol = {}) const;
};

// Canonical constructions used throughout the library and tests.

Channel identity_channel(int d);

/// Completely depolarizing channel Omega: x -> Tr(x) I/d.
Channel omega_channel(int d);

/// (1-p) id + p Omega; p is the mixing weight toward Omega.
Channel depolarizing_channel(int d, double p);

Channel unitary_channel(const ComplexMatrix& u, Tolerance tol = {});

/// Schur multiplier channel T_b(x) = b o x (entrywise); requires b PSD.
Channel schur_channel(const ComplexMatrix& b, Tolerance tol = {});

/// Mixture of `m` Haar unitary conjugations with flat Dirichlet weights;
/// exactly unital and trace preserving by construction.
Channel random_unital_channel(int d, int m, Rng& rng);

}  // namespace qchan

#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "qchan/algebra.hpp"
#include "qchan/channel.hpp"

namespace qchan {

enum class EbStatus { EB, NotEB, Unknown };

/// Holevo form E(x) = sum_j Tr(x R_j) Q_j with R_j PSD trace-1 and Q_j PSD.
/// Existence of such a form is equivalent to entanglement breaking.
struct HolevoForm {
  std::vector<ComplexMatrix> r;
  std::vector<ComplexMatrix> q;
};

/// ||choi/d - I/D||_F^2 <= 1/(D(D+1)) with D = d^2 puts the normalized
/// Choi matrix inside the separable ball around the maximally mixed state.
struct GurvitsBallCert {
  double distance_sq = 0.0;
  double radius_sq = 0.0;
};

struct AbelianRangeCert {
  HolevoForm holevo;
};

/// In 2 (x) 2 and 2 (x) 3 the PPT test decides separability exactly.
struct ExactSmallDimCert {
  int d_in = 0;
  int d_out = 0;
  bool ppt = false;
};

/// For E^n = a^n Phi^n + (1-a^n) Omega, the bound d a^n/(1-a^n) <= 1
/// certifies entanglement breaking (x -> Tr(x) 1 + Psi(x) with ||Psi|| <= 1
/// is entanglement breaking).
struct StormerMixCert {
  int n = 0;
  int d = 0;
  double a = 0.0;
  double bound = 0.0;
};

using Certificate =
    std::variant<GurvitsBallCert, AbelianRangeCert, ExactSmallDimCert,
                 StormerMixCert>;

/// Negative eigenvalue of the partial transpose of the normalized Choi.
struct NptWitness {
  double eigenvalue = 0.0;
  ComplexVector eigenvector;
};

/// Two multiplicative-domain elements with a nonvanishing commutator;
/// for a unital channel this rules out entanglement breaking.
struct NonAbelianMdWitness {
  int i = 0;
  int j = 0;
  double commutator_norm = 0.0;
  ComplexMatrix x;
  ComplexMatrix y;
};

using Witness = std::variant<NptWitness, NonAbelianMdWitness>;

struct SeparabilityVerdict {
  EbStatus status = EbStatus::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Witness> witness;
};

/// PPT test on the Choi matrix; returns the decision and the minimum
/// eigenvalue of the partial transpose (of the unnormalized Choi).
std::pair<bool, double> is_ppt(const Channel& e, Tolerance tol = {});

std::optional<Certificate> gurvits_ball_certificate(const Channel& e);

/// If the *-algebra generated by the range of E is abelian, builds the
/// Holevo form from its minimal projections q_j: coefficients come from
/// the HS-adjoint map, R_j = E*(q_j)/Tr(E*(q_j)), Q_j = Tr(E*(q_j)) q_j /
/// Tr(q_j). Returns nullopt when the range algebra is non-abelian.
std::optional<Certificate> abelian_range_certificate(const Channel& e,
                                                     Tolerance tol = {});

/// Exact EB decision in 2 (x) 2 / 2 (x) 3 (PPT iff separable there);
/// nullopt when the dimensions are out of range.
std::optional<bool> eb_exact_small(const Channel& e, Tolerance tol = {});

/// Decision cascade: NPT witness, non-abelian multiplicative domain
/// (unital channels), exact small dimension, abelian range, Gurvits ball,
/// else Unknown. Certificates and witnesses are re-validated before return.
SeparabilityVerdict eb_verdict(const Channel& e, Tolerance tol = {});

std::optional<Certificate> stormer_mix_certificate(const DepolarizingMix& m,
                                                   int n);

/// Re-validation entry points: check the stored evidence against the
/// channel from scratch, independently of how it was found.
bool validate_certificate(const Certificate& c, const Channel& e,
                          Tolerance tol = {});
bool validate_witness(const Witness& w, const Channel& e, Tolerance tol = {});

/// Random unital PPT channel: Dykstra alternating projections of a random
/// Choi matrix onto PSD, PSD-partial-transpose and the TP+unital affine
/// subspace, nudged into the strict interior by a 0.05 mix with Omega.
Channel random_ppt_unital_channel(int d, Rng& rng, Tolerance tol = {});

}  // namespace qchan

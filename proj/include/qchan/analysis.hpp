#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qchan/separability.hpp"
#include "qchan/spectral.hpp"

namespace qchan {

struct PowerLogEntry {
  int n = 0;
  EbStatus status = EbStatus::Unknown;
};

/// Outcome of the index-of-separability search. `n` is the first power
/// with a validated EB certificate; since intermediate Unknown verdicts may
/// hide earlier EB powers, it is an upper bound on the true index.
struct IndexResult {
  bool found = false;
  int n = 0;
  std::optional<Certificate> certificate;
  int cap = 0;
  std::vector<PowerLogEntry> log;
};

/// Evaluates eb_verdict(E^n) for n = 1..cap and reports the first
/// certified power.
IndexResult separability_index(const Channel& e, int cap = 64,
                               Tolerance tol = {});

/// Mix-aware overload: the closed-form Stormer certificate for
/// a^n Phi^n + (1-a^n) Omega is tried at each power before the generic
/// cascade, which is what makes the densified construction certify at its
/// predicted power.
IndexResult separability_index(const DepolarizingMix& m, int cap = 64,
                               Tolerance tol = {});

/// E^kappa permutes the minimal projections of the (abelian) stabilized
/// multiplicative domain; with m the order of that permutation and
/// n = m kappa, E^n restricts to an independent channel on each block.
struct BlockDecomposition {
  int kappa = 0;
  std::vector<ComplexMatrix> projections;
  std::vector<int> sigma;  // E^kappa(p_i) = p_{sigma[i]}
  int m = 0;
  int n = 0;
  std::vector<ComplexMatrix> isometries;  // columns span range(p_i)
  std::vector<Channel> blocks;            // compressions of E^n
  double residual = 0.0;  // max off-block leakage of E^n on matrix units
  bool ppt = false;
  double ppt_min_eigenvalue = 0.0;
};

/// Requires E unital TP with abelian stabilized multiplicative domain
/// (automatic for PPT channels); PPT status is reported alongside rather
/// than required.
BlockDecomposition block_decompose(const Channel& e, Tolerance tol = {});

/// sum_i p_i E^n(p_i x p_i) p_i rebuilt from the blocks, for comparison
/// against power(e, n).
Channel reconstruct_from_blocks(const BlockDecomposition& dec, Tolerance tol = {});

struct AsymptoticClassification {
  bool asymptotically_eb = false;
  int stabilized_dim = 0;
  bool abelian = false;
  SeparabilityVerdict peripheral_projection_verdict;
  std::optional<Channel> projection;  // the conditional expectation itself
};

/// A unital channel is asymptotically entanglement breaking iff its
/// stabilized multiplicative domain is abelian; in that case the peripheral
/// projection carries an abelian-range EB certificate.
AsymptoticClassification classify_asymptotic(const Channel& e, Tolerance tol = {});

struct DensifyResult {
  DepolarizingMix mix;
  int predicted_n = 0;  // first n with d a^n / (1 - a^n) <= 1
  double distance = 0.0;
};

/// Perturbs Phi to (1 - delta/2) Phi + (delta/2) Omega, whose powers admit
/// a closed form with a guaranteed finite index of separability.
DensifyResult densify(const Channel& phi, double delta, Tolerance tol = {});

// Named channel families.

/// d = 3 instance: Schur multiplier by (J_2 (+) 1) followed by the cyclic
/// shift; not PPT, yet its square is entanglement breaking. The general-d
/// version first becomes entanglement breaking at power d-1.
Channel example51_channel(int d = 3);

/// 2 x 2 Schur channel with multiplier [[1, lambda], [lambda, 1]],
/// 0 < lambda < 1: no power is entanglement breaking, but the channel is
/// asymptotically entanglement breaking.
Channel schur_lambda_channel(double lambda);

struct FamilySpec {
  std::string family;  // schur | unitary | example51 | schur_lambda |
                       // omega | random_unital | random_ppt_unital
  int d = 2;
  double lambda = 0.5;
  double delta = 0.1;
  int m = 4;
  std::uint64_t seed = 0;
  std::optional<ComplexMatrix> matrix;  // b for schur, u for unitary
};

Channel generate(const FamilySpec& spec, Tolerance tol = {});

}  // namespace qchan

#include "qchan/analysis.hpp"

#include <cmath>
#include <numeric>

namespace qchan {

namespace {

Channel power_from_superop(const ComplexMatrix& superop_n, int d, Tolerance tol) {
  return kraus_from_choi(choi_superop_reshuffle(superop_n, d), tol);
}

int permutation_order(const std::vector<int>& sigma) {
  const int k = static_cast<int>(sigma.size());
  std::vector<bool> seen(k, false);
  long long order = 1;
  for (int i = 0; i < k; ++i) {
    if (seen[i]) continue;
    int len = 0;
    int j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = sigma[j];
      ++len;
    }
    order = std::lcm(order, static_cast<long long>(len));
  }
  return static_cast<int>(order);
}

ComplexMatrix range_isometry(const ComplexMatrix& p, Tolerance tol) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(p);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    if (es.eigenvalues()(i) > 0.5) keep.push_back(i);
  }
  ComplexMatrix v(p.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) {
    v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(keep[c]);
  }
  if ((v.adjoint() * v -
       ComplexMatrix::Identity(v.cols(), v.cols()))
          .norm() > tol.scaled(1.0) * 100) {
    throw InternalInvariantError("range_isometry: projection is not clean");
  }
  return v;
}

}  // namespace

IndexResult separability_index(const Channel& e, int cap, Tolerance tol) {
  if (e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "separability_index: channel must be trace preserving");
  }
  IndexResult result;
  result.cap = cap;
  const int d = e.dim();
  ComplexMatrix superop_n = ComplexMatrix::Identity(d * d, d * d);
  for (int n = 1; n <= cap; ++n) {
    superop_n = superop_n * e.superop();
    Channel en = power_from_superop(superop_n, d, tol);
    SeparabilityVerdict verdict = eb_verdict(en, tol);
    result.log.push_back({n, verdict.status});
    if (verdict.status == EbStatus::EB) {
      result.found = true;
      result.n = n;
      result.certificate = verdict.certificate;
      return result;
    }
  }
  return result;
}

IndexResult separability_index(const DepolarizingMix& m, int cap, Tolerance tol) {
  IndexResult result;
  result.cap = cap;
  const int d = m.base.dim();
  Channel mix = m.as_channel(tol);
  ComplexMatrix superop_n = ComplexMatrix::Identity(d * d, d * d);
  for (int n = 1; n <= cap; ++n) {
    superop_n = superop_n * mix.superop();
    if (auto cert = stormer_mix_certificate(m, n)) {
      result.log.push_back({n, EbStatus::EB});
      result.found = true;
      result.n = n;
      result.certificate = cert;
      return result;
    }
    Channel en = power_from_superop(superop_n, d, tol);
    SeparabilityVerdict verdict = eb_verdict(en, tol);
    result.log.push_back({n, verdict.status});
    if (verdict.status == EbStatus::EB) {
      result.found = true;
      result.n = n;
      result.certificate = verdict.certificate;
      return result;
    }
  }
  return result;
}

BlockDecomposition block_decompose(const Channel& e, Tolerance tol) {
  if (e.flags().unital != Tri::yes || e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "block_decompose: channel must be unital and trace preserving");
  }
  const int d = e.dim();

  MdChain chain = md_chain(e, 0, tol);
  if (!is_abelian(chain.stabilized, tol)) {
    throw UnsupportedPreconditionError(
        "block_decompose: stabilized multiplicative domain is not abelian");
  }

  BlockDecomposition dec;
  dec.kappa = chain.kappa;
  dec.projections = minimal_projections(chain.stabilized, tol);
  const int k = static_cast<int>(dec.projections.size());

  auto [ppt, min_ev] = is_ppt(e, tol);
  dec.ppt = ppt;
  dec.ppt_min_eigenvalue = min_ev;

  // Match E^kappa(p_i) against the projection list.
  Channel e_kappa = power(e, dec.kappa, tol);
  const double match_tol = tol.eps * std::sqrt(double(d));
  dec.sigma.assign(k, -1);
  std::vector<bool> taken(k, false);
  for (int i = 0; i < k; ++i) {
    ComplexMatrix image = e_kappa.apply(dec.projections[i]);
    for (int j = 0; j < k; ++j) {
      if (!taken[j] && (image - dec.projections[j]).norm() <= match_tol) {
        dec.sigma[i] = j;
        taken[j] = true;
        break;
      }
    }
    if (dec.sigma[i] < 0) {
      throw InternalInvariantError(
          "block_decompose: E^kappa does not permute the minimal projections");
    }
  }

  dec.m = permutation_order(dec.sigma);
  dec.n = dec.m * dec.kappa;
  Channel e_n = power(e, dec.n, tol);

  // Off-block leakage of E^n over a full matrix-unit basis.
  double residual = 0.0;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      ComplexMatrix x = matrix_unit(d, a, b);
      ComplexMatrix image = e_n.apply(x);
      ComplexMatrix kept = ComplexMatrix::Zero(d, d);
      for (const auto& p : dec.projections) {
        kept += p * e_n.apply(ComplexMatrix(p * x * p)) * p;
      }
      residual = std::max(residual, (image - kept).norm());
    }
  }
  dec.residual = residual;

  for (const auto& p : dec.projections) {
    ComplexMatrix v = range_isometry(p, tol);
    std::vector<ComplexMatrix> block_kraus;
    block_kraus.reserve(e_n.kraus().size());
    for (const auto& kop : e_n.kraus()) {
      block_kraus.push_back(v.adjoint() * kop * v);
    }
    Channel block = kraus_from_choi(Channel(block_kraus, tol).choi(), tol);
    ChannelFlags f = verify(block, Tolerance{tol.eps * 100});
    if (f.tp != Tri::yes || f.unital != Tri::yes) {
      throw InternalInvariantError(
          "block_decompose: compressed block is not a unital channel");
    }
    StarAlgebra block_md = multiplicative_domain(block, tol);
    if (block_md.dim() != 1) {
      throw InternalInvariantError(
          "block_decompose: block has nontrivial multiplicative domain "
          "(input outside the theorem's hypotheses?)");
    }
    dec.isometries.push_back(std::move(v));
    dec.blocks.push_back(std::move(block));
  }
  return dec;
}

Channel reconstruct_from_blocks(const BlockDecomposition& dec, Tolerance tol) {
  if (dec.blocks.empty()) {
    throw ContractError("reconstruct_from_blocks: empty decomposition");
  }
  const int d = static_cast<int>(dec.projections.front().rows());
  const Eigen::Index n2 = static_cast<Eigen::Index>(d) * d;
  ComplexMatrix s = ComplexMatrix::Zero(n2, n2);
  for (std::size_t i = 0; i < dec.blocks.size(); ++i) {
    const auto& v = dec.isometries[i];
    // x -> V block(V* x V) V*  as a superoperator on M_d.
    ComplexMatrix lift_in = kron(v.conjugate(), v);    // vec(VyV*) = . vec(y)
    ComplexMatrix compress = kron(v.transpose(), v.adjoint());
    s += lift_in * dec.blocks[i].superop() * compress;
  }
  return kraus_from_choi(choi_superop_reshuffle(s, d), tol);
}

AsymptoticClassification classify_asymptotic(const Channel& e, Tolerance tol) {
  if (e.flags().unital != Tri::yes || e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "classify_asymptotic: channel must be unital and trace preserving");
  }
  MdChain chain = md_chain(e, 0, tol);
  AsymptoticClassification out;
  out.stabilized_dim = chain.stabilized.dim();
  out.abelian = is_abelian(chain.stabilized, tol);
  out.asymptotically_eb = out.abelian;

  Channel proj = peripheral_projection(e, tol);
  out.projection = proj;
  if (out.abelian) {
    // Range(P) spans the peripheral eigenoperators, which generate the
    // stabilized domain; abelian case must certify through the range.
    auto cert = abelian_range_certificate(proj, tol);
    if (!cert || !validate_certificate(*cert, proj, tol)) {
      throw InternalInvariantError(
          "classify_asymptotic: abelian stabilized domain but the peripheral "
          "projection has no abelian-range certificate");
    }
    out.peripheral_projection_verdict =
        SeparabilityVerdict{EbStatus::EB, *cert, std::nullopt};
  } else {
    out.peripheral_projection_verdict = eb_verdict(proj, tol);
  }
  return out;
}

DensifyResult densify(const Channel& phi, double delta, Tolerance tol) {
  if (phi.flags().unital != Tri::yes || phi.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "densify: base channel must be unital and trace preserving");
  }
  if (!(delta > 0.0) || delta > 1.0) {
    throw ConstructionError("densify: delta must lie in (0, 1]");
  }
  DensifyResult out{DepolarizingMix(phi, delta), 0, 0.0};
  const int d = phi.dim();
  const double a = out.mix.a;
  int n = static_cast<int>(
      std::ceil(std::log(1.0 / (d + 1.0)) / std::log(a)));
  n = std::max(n, 1);
  // Guard the ceil against boundary rounding either way.
  while (d * std::pow(a, n) / (1.0 - std::pow(a, n)) > 1.0) ++n;
  while (n > 1 &&
         d * std::pow(a, n - 1) / (1.0 - std::pow(a, n - 1)) <= 1.0) {
    --n;
  }
  out.predicted_n = n;
  if (!stormer_mix_certificate(out.mix, n)) {
    throw InternalInvariantError("densify: predicted power fails its own bound");
  }
  out.distance = channel_distance(out.mix.as_channel(tol), phi);
  return out;
}

Channel example51_channel(int d) {
  if (d < 3) {
    throw ConstructionError("example51_channel: requires d >= 3");
  }
  ComplexMatrix b = ComplexMatrix::Ones(d - 1, d - 1);
  ComplexMatrix full_b = ComplexMatrix::Zero(d, d);
  full_b.topLeftCorner(d - 1, d - 1) = b;
  full_b(d - 1, d - 1) = 1.0;
  // Cyclic shift e_k -> e_{k+1 mod d}.
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) u((k + 1) % d, k) = 1.0;
  return compose(unitary_channel(u), schur_channel(full_b));
}

Channel schur_lambda_channel(double lambda) {
  if (!(lambda > 0.0) || lambda >= 1.0) {
    throw ConstructionError("schur_lambda_channel: lambda must lie in (0, 1)");
  }
  ComplexMatrix b(2, 2);
  b << 1.0, lambda, lambda, 1.0;
  return schur_channel(b);
}

Channel generate(const FamilySpec& spec, Tolerance tol) {
  if (spec.family == "schur") {
    if (!spec.matrix) {
      throw ConstructionError("generate: schur family needs the multiplier b");
    }
    const auto& b = *spec.matrix;
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      if (std::abs(b(i, i) - 1.0) > tol.scaled(1.0)) {
        throw ConstructionError("generate: schur multiplier needs unit diagonal");
      }
    }
    return schur_channel(b, tol);
  }
  if (spec.family == "unitary") {
    if (!spec.matrix) {
      throw ConstructionError("generate: unitary family needs the matrix u");
    }
    return unitary_channel(*spec.matrix, tol);
  }
  if (spec.family == "example51") return example51_channel(spec.d);
  if (spec.family == "schur_lambda") return schur_lambda_channel(spec.lambda);
  if (spec.family == "omega") return omega_channel(spec.d);
  if (spec.family == "identity") return identity_channel(spec.d);
  if (spec.family == "random_unital") {
    Rng rng(spec.seed);
    return random_unital_channel(spec.d, spec.m, rng);
  }
  if (spec.family == "random_ppt_unital") {
    Rng rng(spec.seed);
    return random_ppt_unital_channel(spec.d, rng, tol);
  }
  throw ConstructionError("generate: unknown family '" + spec.family + "'");
}

}  // namespace qchan

#include "qchan/algebra.hpp"

#include <algorithm>
#include <cmath>

namespace qchan {

namespace {

/// Right nullspace of a, with singular values <= tol.eps * s_max treated
/// as zero. Columns of the result are orthonormal.
ComplexMatrix nullspace(const ComplexMatrix& a, Tolerance tol) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol.eps * std::max(smax, 1.0)) ++rank;
  }
  return svd.matrixV().rightCols(a.cols() - rank);
}

bool span_contains(const std::vector<ComplexMatrix>& basis,
                   const ComplexMatrix& x, Tolerance tol) {
  ComplexMatrix residual = x;
  for (const auto& b : basis) residual -= hs_inner(b, x) * b;
  return residual.norm() <= tol.scaled(x.norm());
}

}  // namespace

StarAlgebra StarAlgebra::from_span(int d, const std::vector<ComplexMatrix>& span,
                                   Tolerance tol) {
  for (const auto& m : span) {
    if (m.rows() != d || m.cols() != d) {
      throw DimensionError("StarAlgebra: element is not d x d");
    }
  }
  std::vector<ComplexMatrix> basis = orthonormal_span(span, tol);
  ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  bool has_identity = !basis.empty() && span_contains(basis, eye, tol);
  bool abelian = true;
  for (std::size_t i = 0; i < basis.size() && abelian; ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if ((basis[i] * basis[j] - basis[j] * basis[i]).norm() > tol.scaled(1.0)) {
        abelian = false;
        break;
      }
    }
  }
  return StarAlgebra(d, std::move(basis), has_identity, abelian);
}

ComplexMatrix StarAlgebra::project(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(d_, d_);
  for (const auto& b : basis_) out += hs_inner(b, x) * b;
  return out;
}

bool StarAlgebra::contains(const ComplexMatrix& x, Tolerance tol) const {
  if (x.rows() != d_ || x.cols() != d_) return false;
  return span_contains(basis_, x, tol);
}

bool StarAlgebra::closed_under_adjoint(Tolerance tol) const {
  for (const auto& b : basis_) {
    if (!contains(b.adjoint(), tol)) return false;
  }
  return true;
}

bool StarAlgebra::closed_under_product(Tolerance tol) const {
  for (const auto& bi : basis_) {
    for (const auto& bj : basis_) {
      if (!contains(bi * bj, tol)) return false;
    }
  }
  return true;
}

bool same_algebra(const StarAlgebra& a, const StarAlgebra& b, Tolerance tol) {
  if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
  for (const auto& x : a.basis()) {
    if (!b.contains(x, tol)) return false;
  }
  for (const auto& x : b.basis()) {
    if (!a.contains(x, tol)) return false;
  }
  return true;
}

StarAlgebra multiplicative_domain(const Channel& e, Tolerance tol) {
  if (e.flags().unital != Tri::yes) {
    throw UnsupportedPreconditionError(
        "multiplicative_domain: channel must be unital");
  }
  const int d = e.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const auto& s = e.superop();
  const auto m = static_cast<Eigen::Index>(e.kraus().size());
  ComplexMatrix eye = ComplexMatrix::Identity(d, d);

  ComplexMatrix system(2 * m * n, n);
  Eigen::Index row = 0;
  for (const auto& k : e.kraus()) {
    // K x - E(x) K = 0  and  x K* - K* E(x) = 0, as maps of vec(x).
    system.block(row, 0, n, n) =
        kron(eye, k) - kron(k.transpose(), eye) * s;
    row += n;
    system.block(row, 0, n, n) =
        kron(k.conjugate(), eye) - kron(eye, k.adjoint()) * s;
    row += n;
  }

  ComplexMatrix null_basis = nullspace(system, tol);
  std::vector<ComplexMatrix> basis;
  basis.reserve(null_basis.cols());
  for (Eigen::Index c = 0; c < null_basis.cols(); ++c) {
    basis.push_back(unvec(null_basis.col(c), d, d));
  }
  return StarAlgebra::from_span(d, basis, tol);
}

bool md_brute_check(const Channel& e, const ComplexMatrix& x, Tolerance tol) {
  if (x.rows() != e.dim() || x.cols() != e.dim()) {
    throw DimensionError("md_brute_check: argument must be d x d");
  }
  const double scale = std::max(1.0, x.norm() * x.norm());
  ComplexMatrix ex = e.apply(x);
  ComplexMatrix exa = e.apply(ComplexMatrix(x.adjoint()));
  double r1 = (e.apply(ComplexMatrix(x.adjoint() * x)) - exa * ex).norm();
  double r2 = (e.apply(ComplexMatrix(x * x.adjoint())) - ex * exa).norm();
  return r1 <= tol.scaled(scale) && r2 <= tol.scaled(scale);
}

StarAlgebra fixed_point_algebra(const Channel& e, Tolerance tol) {
  if (e.flags().unital != Tri::yes || e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "fixed_point_algebra: channel must be unital and trace preserving");
  }
  const int d = e.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  ComplexMatrix null_basis =
      nullspace(e.superop() - ComplexMatrix::Identity(n, n), tol);
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index c = 0; c < null_basis.cols(); ++c) {
    basis.push_back(unvec(null_basis.col(c), d, d));
  }
  StarAlgebra fix = StarAlgebra::from_span(d, basis, tol);
  // Fix_E of a unital TP channel is an algebra; rank instability would
  // surface here as a closure failure.
  if (!fix.closed_under_product(Tolerance{tol.eps * 100}) ||
      !fix.closed_under_adjoint(Tolerance{tol.eps * 100})) {
    throw InternalInvariantError(
        "fixed_point_algebra: computed fixed-point space is not closed");
  }
  return fix;
}

MdChain md_chain(const Channel& e, int cap, Tolerance tol) {
  const int d = e.dim();
  if (cap <= 0) cap = d * d;
  std::vector<StarAlgebra> algebras;
  algebras.push_back(multiplicative_domain(e, tol));

  ComplexMatrix superop_power = e.superop();
  for (int n = 1; n <= cap; ++n) {
    superop_power = superop_power * e.superop();
    Channel next = kraus_from_choi(choi_superop_reshuffle(superop_power, d), tol);
    StarAlgebra md_next = multiplicative_domain(next, tol);
    const StarAlgebra& md_last = algebras.back();
    if (md_next.dim() > md_last.dim()) {
      throw InternalInvariantError(
          "md_chain: multiplicative domain dimension increased");
    }
    if (same_algebra(md_next, md_last, tol)) {
      return MdChain{std::move(algebras), n, md_last};
    }
    algebras.push_back(std::move(md_next));
  }
  throw InternalInvariantError(
      "md_chain: no stabilization within cap iterations");
}

bool is_abelian(const StarAlgebra& a, Tolerance tol) {
  const auto& basis = a.basis();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if ((basis[i] * basis[j] - basis[j] * basis[i]).norm() > tol.scaled(1.0)) {
        return false;
      }
    }
  }
  return true;
}

std::vector<ComplexMatrix> minimal_projections(const StarAlgebra& a,
                                               Tolerance tol,
                                               std::uint64_t seed) {
  if (!is_abelian(a, tol)) {
    throw ContractError("minimal_projections: algebra is not abelian");
  }
  if (!a.contains_identity()) {
    throw ContractError("minimal_projections: algebra must contain identity");
  }
  const int d = a.ambient_dim();
  const int k = a.dim();
  const double gap_tol = tol.eps * 10;

  for (int attempt = 0; attempt < 16; ++attempt) {
    Rng rng(seed + static_cast<std::uint64_t>(attempt));
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    ComplexMatrix h = ComplexMatrix::Zero(d, d);
    for (const auto& b : a.basis()) {
      Complex c(unif(rng), unif(rng));
      h += c * b + std::conj(c) * b.adjoint();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const auto& ev = es.eigenvalues();

    // Cluster eigenvalues: a generic element of a k-dimensional abelian
    // algebra takes k distinct values, one per minimal projection.
    std::vector<std::pair<int, int>> clusters;  // [begin, end)
    int begin = 0;
    for (int i = 1; i <= d; ++i) {
      if (i == d || ev(i) - ev(i - 1) > gap_tol) {
        clusters.emplace_back(begin, i);
        begin = i;
      }
    }
    if (static_cast<int>(clusters.size()) != k) continue;

    std::vector<ComplexMatrix> projections;
    bool ok = true;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (auto [b0, b1] : clusters) {
      ComplexMatrix p = ComplexMatrix::Zero(d, d);
      for (int i = b0; i < b1; ++i) {
        p.noalias() +=
            es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
      }
      if ((p * p - p).norm() > tol.scaled(std::sqrt(double(d))) ||
          !a.contains(p, Tolerance{tol.eps * 10})) {
        ok = false;
        break;
      }
      sum += p;
      projections.push_back(std::move(p));
    }
    if (!ok) continue;
    if ((sum - ComplexMatrix::Identity(d, d)).norm() >
        tol.scaled(std::sqrt(double(d)))) {
      continue;
    }
    return projections;
  }
  throw InternalInvariantError(
      "minimal_projections: no generic element separated the blocks");
}

StarAlgebra generated_algebra(int d, const std::vector<ComplexMatrix>& gens,
                              Tolerance tol) {
  std::vector<ComplexMatrix> span;
  span.push_back(ComplexMatrix::Identity(d, d));
  for (const auto& g : gens) {
    if (g.rows() != d || g.cols() != d) {
      throw DimensionError("generated_algebra: generator is not d x d");
    }
    span.push_back(g);
    span.push_back(g.adjoint());
  }
  std::vector<ComplexMatrix> basis = orthonormal_span(span, tol);
  while (true) {
    std::vector<ComplexMatrix> extended = basis;
    for (const auto& bi : basis) {
      extended.push_back(bi.adjoint());
      for (const auto& bj : basis) extended.push_back(bi * bj);
    }
    std::vector<ComplexMatrix> next = orthonormal_span(extended, tol);
    if (next.size() == basis.size()) break;
    if (next.size() < basis.size() ||
        next.size() > static_cast<std::size_t>(d) * d) {
      throw InternalInvariantError("generated_algebra: rank became unstable");
    }
    basis = std::move(next);
  }
  return StarAlgebra::from_span(d, basis, tol);
}

}  // namespace qchan

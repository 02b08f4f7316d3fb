#include "qchan/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qchan {

namespace {

bool peripheral(Complex lambda, double peripheral_tol) {
  return std::abs(lambda) >= 1.0 - peripheral_tol;
}

/// Swaps the diagonal entries at positions (j-1, j) of an upper triangular
/// T by a unitary similarity, updating q alongside.
void swap_adjacent(ComplexMatrix& t, ComplexMatrix& q, Eigen::Index j) {
  const Complex t11 = t(j - 1, j - 1);
  const Complex t12 = t(j - 1, j);
  const Complex t22 = t(j, j);
  if (std::abs(t22 - t11) == 0.0) return;  // equal values, nothing to move
  // First column of the rotation = eigenvector of [[t11,t12],[0,t22]]
  // for t22; the similarity then lands t22 in the leading position.
  Eigen::Vector2cd x(t12, t22 - t11);
  x.normalize();
  Eigen::Matrix2cd u;
  u << x(0), -std::conj(x(1)), x(1), std::conj(x(0));
  t.middleRows(j - 1, 2) = u.adjoint() * t.middleRows(j - 1, 2);
  t.middleCols(j - 1, 2) = t.middleCols(j - 1, 2) * u;
  q.middleCols(j - 1, 2) = q.middleCols(j - 1, 2) * u;
  t(j, j - 1) = 0.0;
}

}  // namespace

int SpectralData::peripheral_count() const {
  return static_cast<int>(
      std::count(peripheral_mask.begin(), peripheral_mask.end(), true));
}

SpectralData spectrum(const Channel& e, double peripheral_tol) {
  const int d = e.dim();
  Eigen::ComplexEigenSolver<ComplexMatrix> es(e.superop());

  std::vector<Eigen::Index> order(es.eigenvalues().size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(es.eigenvalues()(a));
    const double mb = std::abs(es.eigenvalues()(b));
    if (ma != mb) return ma > mb;
    return std::arg(es.eigenvalues()(a)) < std::arg(es.eigenvalues()(b));
  });

  SpectralData data;
  data.peripheral_tol = peripheral_tol;
  for (Eigen::Index i : order) {
    const Complex lambda = es.eigenvalues()(i);
    ComplexVector v = es.eigenvectors().col(i);
    const double nrm = v.norm();
    if (nrm > 0) v /= nrm;
    data.eigenvalues.push_back(lambda);
    data.right_eigenoperators.push_back(unvec(v, d, d));
    data.peripheral_mask.push_back(peripheral(lambda, peripheral_tol));
  }
  return data;
}

Channel peripheral_projection(const Channel& e, Tolerance tol,
                              double peripheral_tol) {
  if (e.flags().unital != Tri::yes || e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "peripheral_projection: channel must be unital and trace preserving");
  }
  const int d = e.dim();
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;

  Eigen::ComplexSchur<ComplexMatrix> schur(e.superop());
  ComplexMatrix t = schur.matrixT();
  ComplexMatrix q = schur.matrixU();

  // Separation check between the two spectral classes.
  double gap = 2.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!peripheral(t(i, i), peripheral_tol)) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (peripheral(t(j, j), peripheral_tol)) continue;
      gap = std::min(gap, std::abs(t(i, i) - t(j, j)));
    }
  }
  if (gap < 10 * tol.eps) {
    throw IllConditionedSpectrumError(
        "peripheral_projection: peripheral gap too small");
  }

  // Reorder the Schur form so peripheral eigenvalues lead.
  Eigen::Index k = 0;
  for (Eigen::Index target = 0; target < n; ++target) {
    Eigen::Index found = -1;
    for (Eigen::Index i = target; i < n; ++i) {
      if (peripheral(t(i, i), peripheral_tol)) {
        found = i;
        break;
      }
    }
    if (found < 0) break;
    for (Eigen::Index j = found; j > target; --j) swap_adjacent(t, q, j);
    ++k;
  }
  if (k == 0) {
    throw InternalInvariantError(
        "peripheral_projection: no peripheral eigenvalue (unital TP channel "
        "must have eigenvalue 1)");
  }

  ComplexMatrix proj_superop;
  if (k == n) {
    proj_superop = ComplexMatrix::Identity(n, n);
  } else {
    // Spectral projector of T onto the leading block: [[I, R], [0, 0]]
    // with T11 R - R T22 = T12; both blocks are triangular, so each
    // column is one triangular solve.
    const Eigen::Index p = n - k;
    ComplexMatrix t11 = t.topLeftCorner(k, k);
    ComplexMatrix t12 = t.topRightCorner(k, p);
    ComplexMatrix t22 = t.bottomRightCorner(p, p);
    ComplexMatrix r(k, p);
    for (Eigen::Index j = 0; j < p; ++j) {
      ComplexVector rhs = t12.col(j);
      for (Eigen::Index i = 0; i < j; ++i) rhs += r.col(i) * t22(i, j);
      ComplexMatrix shifted = t11;
      shifted.diagonal().array() -= t22(j, j);
      r.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
    ComplexMatrix block = ComplexMatrix::Zero(n, n);
    block.topLeftCorner(k, k) = ComplexMatrix::Identity(k, k);
    block.topRightCorner(k, p) = r;
    proj_superop = q * block * q.adjoint();
  }

  const double scale = std::max(1.0, proj_superop.norm());
  if ((proj_superop * proj_superop - proj_superop).norm() >
      100 * tol.scaled(scale)) {
    throw InternalInvariantError("peripheral_projection: P^2 != P");
  }
  if ((proj_superop * e.superop() - e.superop() * proj_superop).norm() >
      100 * tol.scaled(scale)) {
    throw InternalInvariantError(
        "peripheral_projection: P does not commute with the channel");
  }

  Channel p_channel =
      kraus_from_choi(choi_superop_reshuffle(proj_superop, d), tol);
  ChannelFlags f = verify(p_channel, Tolerance{tol.eps * 100});
  if (f.cp != Tri::yes || f.tp != Tri::yes || f.unital != Tri::yes) {
    throw InternalInvariantError(
        "peripheral_projection: projection is not a unital channel");
  }
  return p_channel;
}

bool is_primitive(const Channel& e, Tolerance tol) {
  if (e.flags().unital != Tri::yes || e.flags().tp != Tri::yes) {
    throw UnsupportedPreconditionError(
        "is_primitive: channel must be unital and trace preserving");
  }
  MdChain chain = md_chain(e, 0, tol);
  const bool trivial_domain = chain.stabilized.dim() == 1;

  SpectralData sd = spectrum(e);
  const int peripheral = sd.peripheral_count();
  const bool trivial_spectrum =
      peripheral == 1 && std::abs(sd.eigenvalues.front() - 1.0) < 1e-6;
  if (trivial_domain != trivial_spectrum) {
    throw InternalInvariantError(
        "is_primitive: stabilized domain and peripheral spectrum disagree");
  }
  return trivial_domain;
}

bool is_irreducible(const Channel& e, Tolerance tol) {
  const int d = e.dim();
  StarAlgebra generated = generated_algebra(d, e.kraus(), tol);
  return generated.dim() == d * d;
}

}  // namespace qchan

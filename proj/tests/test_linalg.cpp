#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "qchan/random.hpp"

using namespace qchan;
using qchan::testing::matrix_close;
using qchan::testing::sorted_hermitian_eigenvalues;

namespace {

// Exact rank over small integer-like inputs, by Gaussian elimination on
// the stacked vectorizations. Independent of the SVD route used by
// orthonormal_span.
int brute_rank(std::vector<ComplexVector> rows, double pivot_tol = 1e-10) {
  int rank = 0;
  const Eigen::Index n = rows.empty() ? 0 : rows.front().size();
  for (Eigen::Index col = 0; col < n && rank < (int)rows.size(); ++col) {
    int pivot = -1;
    double best = pivot_tol;
    for (int r = rank; r < (int)rows.size(); ++r) {
      if (std::abs(rows[r](col)) > best) {
        best = std::abs(rows[r](col));
        pivot = r;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (r != rank && std::abs(rows[r](col)) > 0) {
        rows[r] -= (rows[r](col) / rows[rank](col)) * rows[rank];
      }
    }
    ++rank;
  }
  return rank;
}

ComplexMatrix identity_choi_d2() {
  // sum_ij E_ij (x) E_ij
  ComplexMatrix c = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c += kron(matrix_unit(2, i, j), matrix_unit(2, i, j));
  return c;
}

}  // namespace

TEST_CASE("hs_inner on matrix units") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  CHECK(hs_inner(i2, i2) == Complex(2.0, 0.0));
  CHECK(std::abs(hs_inner(matrix_unit(2, 0, 0), matrix_unit(2, 1, 1))) == 0.0);
  CHECK(hs_inner(matrix_unit(2, 0, 1), matrix_unit(2, 0, 1)) == Complex(1.0, 0.0));
}

TEST_CASE("hs_inner conjugate symmetry and positivity") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix a = ginibre(3, 3, rng);
    ComplexMatrix b = ginibre(3, 3, rng);
    Complex ab = hs_inner(a, b);
    Complex ba = hs_inner(b, a);
    CHECK(std::abs(ab - std::conj(ba)) < 1e-12);
    Complex aa = hs_inner(a, a);
    CHECK(std::abs(aa.imag()) < 1e-12);
    CHECK(aa.real() >= 0.0);
  }
}

TEST_CASE("hs_inner rejects shape mismatch") {
  CHECK_THROWS_AS(hs_inner(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(3, 3)),
                  DimensionError);
}

TEST_CASE("is_psd basics") {
  CHECK(is_psd(ComplexMatrix::Identity(3, 3)));
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.0;
  neg(1, 1) = -0.1;
  CHECK_FALSE(is_psd(neg));
}

TEST_CASE("is_psd rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(is_psd(m), ContractError);
}

TEST_CASE("identity-channel Choi matrix is PSD with eigenvalues {2,0,0,0}") {
  ComplexMatrix c = identity_choi_d2();
  CHECK(is_psd(c));
  // Rank-1: c = v v* with v = e_0 (x) e_0 + e_1 (x) e_1, so the spectrum
  // is {||v||^2, 0, 0, 0} = {2, 0, 0, 0}.
  auto ev = sorted_hermitian_eigenvalues(c);
  CHECK(std::abs(ev[3] - 2.0) < 1e-12);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(ev[i]) < 1e-12);
}

TEST_CASE("is_psd agrees with pivoted Cholesky on random Hermitian matrices") {
  Rng rng(11);
  std::uniform_int_distribution<int> dim(1, 8);
  std::uniform_real_distribution<double> mag(1e-3, 1.0);
  std::uniform_int_distribution<int> sign(0, 1);
  int done = 0;
  while (done < 50) {
    const int d = dim(rng);
    // Spectrum bounded away from zero so both classifiers see the same side.
    Eigen::VectorXd ev(d);
    bool negative = false;
    for (int i = 0; i < d; ++i) {
      ev(i) = mag(rng) * (sign(rng) ? 1.0 : -1.0);
      negative = negative || ev(i) < 0.0;
    }
    ComplexMatrix u = haar_unitary(d, rng);
    ComplexMatrix a = u * ev.asDiagonal() * u.adjoint();
    a = 0.5 * (a + a.adjoint());

    Eigen::LDLT<ComplexMatrix> ldlt(a);
    const bool brute = ldlt.info() == Eigen::Success && ldlt.isPositive();
    CHECK(is_psd(a) == brute);
    CHECK(is_psd(a) == !negative);
    ++done;
  }
}

TEST_CASE("partial_transpose fixes the identity") {
  CHECK(matrix_close(partial_transpose(ComplexMatrix::Identity(4, 4), 2, 2),
                     ComplexMatrix::Identity(4, 4)));
}

TEST_CASE("partial transpose of the identity-channel Choi is the swap") {
  ComplexMatrix swap = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) swap(i * 2 + k, k * 2 + i) = 1.0;
  ComplexMatrix pt = partial_transpose(identity_choi_d2(), 2, 2);
  CHECK(matrix_close(pt, swap));
  auto ev = sorted_hermitian_eigenvalues(pt);
  CHECK(std::abs(ev[0] + 1.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(ev[i] - 1.0) < 1e-12);
}

TEST_CASE("partial transpose on an elementary tensor") {
  ComplexMatrix lhs = kron(matrix_unit(2, 0, 1), matrix_unit(2, 0, 1));
  ComplexMatrix rhs = kron(matrix_unit(2, 0, 1), matrix_unit(2, 1, 0));
  CHECK(matrix_close(partial_transpose(lhs, 2, 2), rhs));
}

TEST_CASE("partial transpose is a trace/hermiticity-preserving involution") {
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix m = ginibre(6, 6, rng);
    ComplexMatrix pt = partial_transpose(m, 2, 3);
    CHECK(matrix_close(partial_transpose(pt, 2, 3), m, 1e-12));
    CHECK(std::abs(pt.trace() - m.trace()) < 1e-12);
    ComplexMatrix h = 0.5 * (m + m.adjoint());
    ComplexMatrix pth = partial_transpose(h, 2, 3);
    CHECK((pth - pth.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("partial_transpose rejects bad dimensions") {
  CHECK_THROWS_AS(partial_transpose(ComplexMatrix::Zero(5, 5), 2, 2),
                  DimensionError);
}

TEST_CASE("orthonormal_span collapses collinear inputs") {
  ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  auto basis = orthonormal_span({i2, 2.0 * i2});
  REQUIRE(basis.size() == 1);
  CHECK(std::abs(std::abs(hs_inner(basis[0], i2 / std::sqrt(2.0))) - 1.0) < 1e-12);
}

TEST_CASE("orthonormal_span counts independent directions") {
  auto basis = orthonormal_span({matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)});
  CHECK(basis.size() == 2);
}

TEST_CASE("orthonormal_span rank matches brute-force elimination") {
  ComplexMatrix a = matrix_unit(2, 0, 0) + matrix_unit(2, 0, 1);
  ComplexMatrix b = matrix_unit(2, 0, 0) - matrix_unit(2, 0, 1);
  ComplexMatrix c = matrix_unit(2, 0, 1);
  const int expected = brute_rank({vec(a), vec(b), vec(c)});
  CHECK(expected == 2);
  auto basis = orthonormal_span({a, b, c});
  CHECK((int)basis.size() == expected);
  for (const auto& m : {a, b, c}) {
    ComplexMatrix residual = m;
    for (const auto& e : basis) residual -= hs_inner(e, m) * e;
    CHECK(residual.norm() < 1e-10);
  }
}

TEST_CASE("orthonormal_span output is orthonormal") {
  Rng rng(3);
  std::vector<ComplexMatrix> s;
  for (int i = 0; i < 7; ++i) s.push_back(ginibre(3, 3, rng));
  s.push_back(s[0] + s[1]);  // force a dependency
  auto basis = orthonormal_span(s);
  CHECK(basis.size() == 7);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      Complex ip = hs_inner(basis[i], basis[j]);
      CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
    }
  }
}

TEST_CASE("orthonormal_span of nothing is empty") {
  CHECK(orthonormal_span({}).empty());
}

TEST_CASE("vec uses column stacking") {
  ComplexVector v = vec(matrix_unit(2, 0, 0));
  CHECK(v(0) == Complex(1.0, 0.0));
  for (int i = 1; i < 4; ++i) CHECK(v(i) == Complex(0.0, 0.0));
  // E_12 sits at column-major index 1*2 + 0 = 2.
  ComplexVector w = vec(matrix_unit(2, 0, 1));
  CHECK(w(2) == Complex(1.0, 0.0));
}

TEST_CASE("vec roundtrip and isometry") {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix x = ginibre(4, 4, rng);
    CHECK(matrix_close(unvec(vec(x)), x, 1e-15));
    CHECK(std::abs(vec(x).norm() - x.norm()) < 1e-12);
  }
}

TEST_CASE("unvec rejects non-square lengths") {
  CHECK_THROWS_AS(unvec(ComplexVector::Zero(5)), DimensionError);
}

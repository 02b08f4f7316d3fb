#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qchan/errors.hpp"

namespace qchan {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Relative tolerance policy: every comparison scales eps by
/// max(1, magnitude of the operands involved).
struct Tolerance {
  double eps = 1e-8;
  double scaled(double magnitude) const;
};

/// Matrix unit E_ij: 1 at (i, j), zero elsewhere.
ComplexMatrix matrix_unit(int d, int i, int j);

/// Hilbert-Schmidt inner product Tr(A* B), conjugate-linear in A.
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, Tolerance tol = {});

/// Smallest eigenvalue of the Hermitian part (A + A*)/2.
double min_hermitian_eigenvalue(const ComplexMatrix& a);

/// PSD test: min eigenvalue >= -eps * max(1, ||A||_2).
/// Throws ContractError if a is not Hermitian within tol.
bool is_psd(const ComplexMatrix& a, Tolerance tol = {});

/// Transpose of the second tensor factor: input is (dl*dr) x (dl*dr),
/// each dr x dr block of the dl x dl block grid is transposed in place.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int dl, int dr);

/// Trace over the first factor of M_dl (x) M_dr: result is dr x dr.
ComplexMatrix partial_trace_left(const ComplexMatrix& m, int dl, int dr);

/// Trace over the second factor of M_dl (x) M_dr: result is dl x dl.
ComplexMatrix partial_trace_right(const ComplexMatrix& m, int dl, int dr);

/// HS-orthonormal basis of span(s). Length equals the numerical rank of
/// the stacked vectorizations (singular values > eps * s_max kept).
std::vector<ComplexMatrix> orthonormal_span(const std::vector<ComplexMatrix>& s,
                                            Tolerance tol = {});

/// Column-stacking vectorization: vec(A)[c*rows + r] = A(r, c).
ComplexVector vec(const ComplexMatrix& a);

/// Inverse of vec for a square matrix; length must be a perfect square.
ComplexMatrix unvec(const ComplexVector& v);
ComplexMatrix unvec(const ComplexVector& v, int rows, int cols);

/// Kronecker product, (A kron B)(i*rb + k, j*cb + l) = A(i,j) B(k,l).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace qchan

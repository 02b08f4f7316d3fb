#include "qchan/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace qchan {

double Tolerance::scaled(double magnitude) const {
  return eps * std::max(1.0, magnitude);
}

ComplexMatrix matrix_unit(int d, int i, int j) {
  if (i < 0 || j < 0 || i >= d || j >= d) {
    throw DimensionError("matrix_unit: index out of range");
  }
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hs_inner: shape mismatch");
  }
  return (a.adjoint() * b).trace();
}

bool is_hermitian(const ComplexMatrix& a, Tolerance tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol.scaled(a.norm());
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

bool is_psd(const ComplexMatrix& a, Tolerance tol) {
  if (a.rows() != a.cols()) {
    throw DimensionError("is_psd: matrix not square");
  }
  if (!is_hermitian(a, tol)) {
    throw ContractError("is_psd: matrix not Hermitian within tolerance");
  }
  ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  double spectral_norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  return ev.minCoeff() >= -tol.scaled(spectral_norm);
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int dl, int dr) {
  const int n = dl * dr;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_transpose: matrix is not (dl*dr) square");
  }
  ComplexMatrix out(n, n);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j)
      out.block(i * dr, j * dr, dr, dr) =
          m.block(i * dr, j * dr, dr, dr).transpose();
  return out;
}

ComplexMatrix partial_trace_left(const ComplexMatrix& m, int dl, int dr) {
  const int n = dl * dr;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace_left: matrix is not (dl*dr) square");
  }
  ComplexMatrix out = ComplexMatrix::Zero(dr, dr);
  for (int i = 0; i < dl; ++i) out += m.block(i * dr, i * dr, dr, dr);
  return out;
}

ComplexMatrix partial_trace_right(const ComplexMatrix& m, int dl, int dr) {
  const int n = dl * dr;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace_right: matrix is not (dl*dr) square");
  }
  ComplexMatrix out(dl, dl);
  for (int i = 0; i < dl; ++i)
    for (int j = 0; j < dl; ++j)
      out(i, j) = m.block(i * dr, j * dr, dr, dr).trace();
  return out;
}

std::vector<ComplexMatrix> orthonormal_span(const std::vector<ComplexMatrix>& s,
                                            Tolerance tol) {
  if (s.empty()) return {};
  const Eigen::Index rows = s.front().rows();
  const Eigen::Index cols = s.front().cols();
  for (const auto& m : s) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError("orthonormal_span: inputs have mixed shapes");
    }
  }
  ComplexMatrix stacked(rows * cols, static_cast<Eigen::Index>(s.size()));
  for (Eigen::Index k = 0; k < stacked.cols(); ++k) stacked.col(k) = vec(s[k]);

  Eigen::JacobiSVD<ComplexMatrix> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return {};
  std::vector<ComplexMatrix> basis;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv(k) > tol.eps * sv(0)) {
      basis.push_back(unvec(svd.matrixU().col(k), static_cast<int>(rows),
                            static_cast<int>(cols)));
    }
  }
  return basis;
}

ComplexVector vec(const ComplexMatrix& a) {
  // Eigen matrices are column-major, so this is exactly column stacking.
  return Eigen::Map<const ComplexVector>(a.data(), a.size());
}

ComplexMatrix unvec(const ComplexVector& v) {
  const auto n = v.size();
  const int d = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (static_cast<Eigen::Index>(d) * d != n) {
    throw DimensionError("unvec: length is not a perfect square");
  }
  return unvec(v, d, d);
}

ComplexMatrix unvec(const ComplexVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw DimensionError("unvec: length does not match rows*cols");
  }
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace qchan

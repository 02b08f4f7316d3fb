#pragma once

#include <doctest.h>

#include <cmath>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/linalg.hpp"

namespace qchan::testing {

inline bool matrix_close(const ComplexMatrix& a, const ComplexMatrix& b,
                         double tol = 1e-9) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         (a - b).norm() <= tol * std::max(1.0, b.norm());
}

/// Two channels define the same map iff they agree on all matrix units.
inline double map_distance(const Channel& e, const Channel& f) {
  double worst = 0.0;
  const int d = e.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      ComplexMatrix u = matrix_unit(d, i, j);
      worst = std::max(worst, (e.apply(u) - f.apply(u)).norm());
    }
  }
  return worst;
}

inline std::vector<double> sorted_hermitian_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
      ComplexMatrix(0.5 * (a + a.adjoint())), Eigen::EigenvaluesOnly);
  std::vector<double> ev(es.eigenvalues().data(),
                         es.eigenvalues().data() + es.eigenvalues().size());
  return ev;  // ascending
}

}  // namespace qchan::testing

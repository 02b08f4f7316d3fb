#include "qchan/random.hpp"

#include <cmath>

namespace qchan {

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = Complex(gauss(rng), gauss(rng));
  return g;
}

ComplexMatrix haar_unitary(int d, Rng& rng) {
  ComplexMatrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int i = 0; i < d; ++i) {
    Complex rii = r(i, i);
    double a = std::abs(rii);
    q.col(i) *= (a > 0.0) ? rii / a : Complex(1.0, 0.0);
  }
  return q;
}

ComplexMatrix random_hermitian(int d, Rng& rng) {
  ComplexMatrix g = ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

std::vector<double> dirichlet_uniform(int m, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& x : w) {
    x = expo(rng);
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace qchan

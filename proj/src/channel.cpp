#include "qchan/channel.hpp"

#include <cmath>
#include <utility>

namespace qchan {

namespace {

ComplexMatrix kraus_to_choi(const std::vector<ComplexMatrix>& kraus, int d) {
  // C = sum_k vec(K_k) vec(K_k)* under the column-stacking convention.
  ComplexMatrix c = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) {
    ComplexVector v = vec(k);
    c.noalias() += v * v.adjoint();
  }
  return c;
}

ComplexMatrix kraus_to_superop(const std::vector<ComplexMatrix>& kraus, int d) {
  ComplexMatrix s = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

Tri tri_of(bool b) { return b ? Tri::yes : Tri::no; }

}  // namespace

Channel::Channel(std::vector<ComplexMatrix> kraus, Tolerance tol)
    : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw DimensionError("Channel: empty Kraus list");
  d_ = static_cast<int>(kraus_.front().rows());
  if (d_ < 1) throw DimensionError("Channel: dimension must be positive");
  for (const auto& k : kraus_) {
    if (k.rows() != d_ || k.cols() != d_) {
      throw DimensionError("Channel: Kraus operators must be d x d");
    }
  }
  choi_ = kraus_to_choi(kraus_, d_);
  superop_ = kraus_to_superop(kraus_, d_);

  ComplexMatrix eye = ComplexMatrix::Identity(d_, d_);
  ComplexMatrix tp_sum = ComplexMatrix::Zero(d_, d_);
  ComplexMatrix un_sum = ComplexMatrix::Zero(d_, d_);
  for (const auto& k : kraus_) {
    tp_sum.noalias() += k.adjoint() * k;
    un_sum.noalias() += k * k.adjoint();
  }
  flags_.cp = Tri::yes;  // x -> sum K x K* is CP by construction
  flags_.tp = tri_of((tp_sum - eye).norm() <= tol.scaled(eye.norm()));
  flags_.unital = tri_of((un_sum - eye).norm() <= tol.scaled(eye.norm()));
}

ComplexMatrix Channel::apply(const ComplexMatrix& x) const {
  if (x.rows() != d_ || x.cols() != d_) {
    throw DimensionError("Channel::apply: argument must be d x d");
  }
  ComplexMatrix out = ComplexMatrix::Zero(d_, d_);
  for (const auto& k : kraus_) out.noalias() += k * x * k.adjoint();
  return out;
}

ChoiMatrix choi_of(const Channel& e) {
  return ChoiMatrix{e.dim(), e.dim(), e.choi(), false};
}

Channel kraus_from_choi(const ComplexMatrix& choi, Tolerance tol) {
  const auto n = choi.rows();
  if (choi.cols() != n) throw DimensionError("kraus_from_choi: not square");
  const int d = static_cast<int>(std::llround(std::sqrt(double(n))));
  if (static_cast<Eigen::Index>(d) * d != n) {
    throw DimensionError("kraus_from_choi: side is not a perfect square");
  }
  if ((choi - choi.adjoint()).norm() > tol.scaled(choi.norm())) {
    throw NotAChannelError("kraus_from_choi: Choi matrix not Hermitian", 0.0);
  }
  ComplexMatrix h = 0.5 * (choi + choi.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const auto& ev = es.eigenvalues();
  const double ev_max = std::max(ev.maxCoeff(), 0.0);
  if (ev.minCoeff() < -tol.scaled(ev_max)) {
    throw NotAChannelError("kraus_from_choi: Choi matrix not PSD",
                           ev.minCoeff());
  }
  // Retention cutoff sits near machine precision, not at tol: dropping
  // eigenvalues at the error-gate scale would spoil the roundtrip.
  const double cutoff = 1e-12 * std::max(1.0, ev_max);
  std::vector<ComplexMatrix> kraus;
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    if (ev(i) > cutoff) {
      kraus.push_back(std::sqrt(ev(i)) *
                      unvec(es.eigenvectors().col(i), d, d));
    }
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(d, d));
  return Channel(std::move(kraus), tol);
}

Channel kraus_from_choi(const ChoiMatrix& c, Tolerance tol) {
  if (c.d_in != c.d_out) {
    throw DimensionError("kraus_from_choi: only square channels supported");
  }
  ComplexMatrix m = c.matrix;
  if (c.normalized) m *= static_cast<double>(c.d_in);
  return kraus_from_choi(m, tol);
}

ComplexMatrix superoperator(const Channel& e) { return e.superop(); }

ComplexMatrix choi_superop_reshuffle(const ComplexMatrix& m, int d) {
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("choi_superop_reshuffle: size mismatch");
  }
  // C[(a,b),(c,e)] = S[(e,b),(c,a)] with composite index (x,y) = x*d + y.
  ComplexMatrix out(n, n);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e)
          out(a * d + b, c * d + e) = m(e * d + b, c * d + a);
  return out;
}

Channel compose(const Channel& second, const Channel& first, Tolerance tol) {
  if (second.dim() != first.dim()) {
    throw DimensionError("compose: channel dimensions differ");
  }
  const int d = first.dim();
  const std::size_t product_count = second.kraus().size() * first.kraus().size();
  if (product_count <= static_cast<std::size_t>(d) * d) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(product_count);
    for (const auto& k2 : second.kraus())
      for (const auto& k1 : first.kraus()) kraus.push_back(k2 * k1);
    return Channel(std::move(kraus), tol);
  }
  ComplexMatrix s = second.superop() * first.superop();
  return kraus_from_choi(choi_superop_reshuffle(s, d), tol);
}

Channel power(const Channel& e, int n, Tolerance tol) {
  if (n < 1) throw ContractError("power: exponent must be >= 1");
  if (n == 1) return e;
  const int d = e.dim();
  ComplexMatrix result = ComplexMatrix::Identity(d * d, d * d);
  ComplexMatrix base = e.superop();
  int k = n;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return kraus_from_choi(choi_superop_reshuffle(result, d), tol);
}

ComplexMatrix apply(const Channel& e, const ComplexMatrix& x) {
  return e.apply(x);
}

ChannelFlags verify(const Channel& e, Tolerance tol) {
  const int d = e.dim();
  ComplexMatrix eye = ComplexMatrix::Identity(d, d);
  ComplexMatrix tp_sum = ComplexMatrix::Zero(d, d);
  ComplexMatrix un_sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : e.kraus()) {
    tp_sum.noalias() += k.adjoint() * k;
    un_sum.noalias() += k * k.adjoint();
  }
  ChannelFlags f;
  f.cp = (min_hermitian_eigenvalue(e.choi()) >=
          -tol.scaled(e.choi().norm()))
             ? Tri::yes
             : Tri::no;
  f.tp = ((tp_sum - eye).norm() <= tol.scaled(eye.norm())) ? Tri::yes : Tri::no;
  f.unital =
      ((un_sum - eye).norm() <= tol.scaled(eye.norm())) ? Tri::yes : Tri::no;
  return f;
}

double channel_distance(const Channel& e, const Channel& f) {
  if (e.dim() != f.dim()) {
    throw DimensionError("channel_distance: dimensions differ");
  }
  return (e.choi() - f.choi()).norm() / static_cast<double>(e.dim());
}

DepolarizingMix::DepolarizingMix(Channel phi, double delta_value)
    : base(std::move(phi)), delta(delta_value), a(1.0 - delta_value / 2.0) {
  if (!(delta > 0.0) || delta > 1.0) {
    throw ConstructionError("DepolarizingMix: delta must lie in (0, 1]");
  }
}

Channel DepolarizingMix::as_channel(Tolerance tol) const {
  const int d = base.dim();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(base.kraus().size() + static_cast<std::size_t>(d) * d);
  const double sa = std::sqrt(a);
  for (const auto& k : base.kraus()) kraus.push_back(sa * k);
  const double sw = std::sqrt((1.0 - a) / d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) kraus.push_back(sw * matrix_unit(d, i, j));
  Channel raw(std::move(kraus), tol);
  if (raw.kraus().size() > static_cast<std::size_t>(d) * d) {
    return kraus_from_choi(raw.choi(), tol);
  }
  return raw;
}

Channel identity_channel(int d) {
  if (d < 1) throw ConstructionError("identity_channel: d must be positive");
  return Channel({ComplexMatrix::Identity(d, d)});
}

Channel omega_channel(int d) {
  if (d < 1) throw ConstructionError("omega_channel: d must be positive");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(d) * d);
  const double w = 1.0 / std::sqrt(double(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) kraus.push_back(w * matrix_unit(d, i, j));
  return Channel(std::move(kraus));
}

Channel depolarizing_channel(int d, double p) {
  if (p < 0.0 || p > 1.0) {
    throw ConstructionError("depolarizing_channel: p must lie in [0, 1]");
  }
  std::vector<ComplexMatrix> kraus;
  kraus.push_back(std::sqrt(1.0 - p) * ComplexMatrix::Identity(d, d));
  const double w = std::sqrt(p / d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) kraus.push_back(w * matrix_unit(d, i, j));
  return kraus_from_choi(Channel(std::move(kraus)).choi());
}

Channel unitary_channel(const ComplexMatrix& u, Tolerance tol) {
  if (u.rows() != u.cols()) {
    throw ConstructionError("unitary_channel: matrix not square");
  }
  ComplexMatrix eye = ComplexMatrix::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - eye).norm() > tol.scaled(eye.norm())) {
    throw ConstructionError("unitary_channel: matrix not unitary");
  }
  return Channel({u}, tol);
}

Channel schur_channel(const ComplexMatrix& b, Tolerance tol) {
  if (b.rows() != b.cols()) {
    throw ConstructionError("schur_channel: b not square");
  }
  if (!is_hermitian(b, tol) || min_hermitian_eigenvalue(b) < -tol.scaled(b.norm())) {
    throw ConstructionError("schur_channel: b must be PSD");
  }
  const int d = static_cast<int>(b.rows());
  ComplexMatrix h = 0.5 * (b + b.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < d; ++i) {
    const double lam = es.eigenvalues()(i);
    if (lam > 1e-12 * std::max(1.0, es.eigenvalues().maxCoeff())) {
      kraus.push_back(
          ComplexMatrix((std::sqrt(lam) * es.eigenvectors().col(i)).asDiagonal()));
    }
  }
  if (kraus.empty()) kraus.push_back(ComplexMatrix::Zero(d, d));
  return Channel(std::move(kraus), tol);
}

Channel random_unital_channel(int d, int m, Rng& rng) {
  if (d < 1 || m < 1) {
    throw ConstructionError("random_unital_channel: d and m must be positive");
  }
  std::vector<double> w = dirichlet_uniform(m, rng);
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(m);
  for (int k = 0; k < m; ++k) {
    kraus.push_back(std::sqrt(w[k]) * haar_unitary(d, rng));
  }
  return Channel(std::move(kraus));
}

}  // namespace qchan

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

using namespace qchan;
using qchan::testing::map_distance;
using qchan::testing::matrix_close;
using qchan::testing::sorted_hermitian_eigenvalues;

TEST_CASE("Choi matrix of the identity channel") {
  Channel id = identity_channel(2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      expected += kron(matrix_unit(2, i, j), matrix_unit(2, i, j));
  CHECK(matrix_close(id.choi(), expected));
  CHECK(std::abs(id.choi().trace() - 2.0) < 1e-12);
  auto ev = sorted_hermitian_eigenvalues(id.choi());
  CHECK(std::abs(ev.back() - 2.0) < 1e-12);  // rank one
  CHECK(std::abs(ev[2]) < 1e-12);
}

TEST_CASE("Choi matrix of Omega is I/d") {
  for (int d : {2, 3}) {
    Channel omega = omega_channel(d);
    CHECK(matrix_close(omega.choi(),
                       ComplexMatrix(ComplexMatrix::Identity(d * d, d * d) /
                                     double(d))));
  }
}

TEST_CASE("Choi matrix of a 2x2 Schur channel, entry by entry") {
  const double lambda = 0.37;
  ComplexMatrix b(2, 2);
  b << 1.0, lambda, lambda, 1.0;
  Channel t = schur_channel(b);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(0, 3) = lambda;
  expected(3, 0) = lambda;
  expected(3, 3) = 1.0;
  CHECK(matrix_close(t.choi(), expected));
}

TEST_CASE("kraus_from_choi on I4/2 reconstructs Omega") {
  Channel rebuilt = kraus_from_choi(ComplexMatrix(ComplexMatrix::Identity(4, 4) / 2.0));
  CHECK(rebuilt.kraus().size() == 4);
  for (const auto& k : rebuilt.kraus()) {
    CHECK(std::abs(k.norm() - 1.0 / std::sqrt(2.0)) < 1e-12);
  }
  CHECK(map_distance(rebuilt, omega_channel(2)) < 1e-12);
}

TEST_CASE("kraus_from_choi on a rank-1 Choi gives a single Kraus operator") {
  Channel rebuilt = kraus_from_choi(identity_channel(3).choi());
  CHECK(rebuilt.kraus().size() == 1);
  CHECK(map_distance(rebuilt, identity_channel(3)) < 1e-12);
}

TEST_CASE("kraus_from_choi rejects a non-PSD matrix") {
  ComplexMatrix bad = ComplexMatrix::Identity(4, 4);
  bad(3, 3) = -0.2;
  CHECK_THROWS_AS(kraus_from_choi(bad), NotAChannelError);
  try {
    kraus_from_choi(bad);
  } catch (const NotAChannelError& e) {
    CHECK(std::abs(e.offending_eigenvalue + 0.2) < 1e-12);
  }
}

TEST_CASE("superoperator of elementary channels") {
  CHECK(matrix_close(identity_channel(2).superop(),
                     ComplexMatrix::Identity(4, 4)));

  Rng rng(2);
  ComplexMatrix u = haar_unitary(3, rng);
  CHECK(matrix_close(unitary_channel(u).superop(), kron(u.conjugate(), u)));

  Channel omega = omega_channel(2);
  ComplexVector vi = vec(ComplexMatrix::Identity(2, 2));
  CHECK(matrix_close(omega.superop(),
                     ComplexMatrix(vi * vi.adjoint() / 2.0)));
  auto ev = sorted_hermitian_eigenvalues(omega.superop());
  CHECK(std::abs(ev.back() - 1.0) < 1e-12);
  CHECK(std::abs(ev[2]) < 1e-12);
}

TEST_CASE("choi and superoperator are the same data reshuffled") {
  Rng rng(4);
  Channel e = random_unital_channel(3, 3, rng);
  CHECK(matrix_close(choi_superop_reshuffle(e.superop(), 3), e.choi(), 1e-12));
  CHECK(matrix_close(choi_superop_reshuffle(e.choi(), 3), e.superop(), 1e-12));
}

TEST_CASE("power of the identity is the identity") {
  Channel id = identity_channel(2);
  CHECK(map_distance(power(id, 7), id) < 1e-12);
}

TEST_CASE("composing with Omega absorbs any trace-preserving channel") {
  Rng rng(9);
  for (int trial = 0; trial < 5; ++trial) {
    Channel f = random_unital_channel(3, 4, rng);
    Channel omega = omega_channel(3);
    CHECK(map_distance(compose(omega, f), omega) < 1e-10);
    CHECK(map_distance(compose(f, omega), omega) < 1e-10);
  }
}

TEST_CASE("power keeps at most d^2 Kraus operators") {
  Rng rng(13);
  Channel e = random_unital_channel(2, 4, rng);
  Channel e8 = power(e, 8);
  CHECK(e8.kraus().size() <= 4);
  CHECK(map_distance(e8, compose(power(e, 4), power(e, 4))) < 1e-10);
}

TEST_CASE("apply matches the superoperator route") {
  Rng rng(17);
  Channel e = random_unital_channel(3, 3, rng);
  ComplexMatrix x = ginibre(3, 3, rng);
  CHECK(matrix_close(unvec(ComplexVector(e.superop() * vec(x)), 3, 3),
                     e.apply(x), 1e-12));
}

TEST_CASE("Omega sends E_11 to I/2") {
  CHECK(matrix_close(omega_channel(2).apply(matrix_unit(2, 0, 0)),
                     ComplexMatrix(ComplexMatrix::Identity(2, 2) / 2.0)));
}

TEST_CASE("Schur channel acts entrywise") {
  Rng rng(19);
  ComplexMatrix g = ginibre(3, 3, rng);
  ComplexMatrix b = ComplexMatrix(g * g.adjoint());
  Eigen::VectorXd dinv = b.diagonal().real().cwiseSqrt().cwiseInverse();
  b = dinv.asDiagonal() * b * dinv.asDiagonal();  // unit diagonal, still PSD
  Channel t = schur_channel(b);
  ComplexMatrix x = ginibre(3, 3, rng);
  CHECK(matrix_close(t.apply(x), ComplexMatrix(b.cwiseProduct(x)), 1e-10));
}

TEST_CASE("verify flags") {
  Rng rng(21);
  ChannelFlags f = verify(unitary_channel(haar_unitary(3, rng)));
  CHECK(f.cp == Tri::yes);
  CHECK(f.tp == Tri::yes);
  CHECK(f.unital == Tri::yes);

  ComplexMatrix b(2, 2);
  b << 1.0, 0.4, 0.4, 1.0;
  ChannelFlags fs = verify(schur_channel(b));
  CHECK(fs.cp == Tri::yes);
  CHECK(fs.tp == Tri::yes);
  CHECK(fs.unital == Tri::yes);

  Channel doubling({ComplexMatrix(std::sqrt(2.0) * ComplexMatrix::Identity(2, 2))});
  ChannelFlags fd = verify(doubling);
  CHECK(fd.cp == Tri::yes);
  CHECK(fd.tp == Tri::no);
  CHECK(fd.unital == Tri::no);
}

TEST_CASE("channel_distance: zero on equal maps, sqrt(3)/2 for id vs Omega") {
  Channel id = identity_channel(2);
  CHECK(channel_distance(id, id) == 0.0);
  CHECK(std::abs(channel_distance(id, omega_channel(2)) -
                 std::sqrt(3.0) / 2.0) < 1e-12);
}

TEST_CASE("depolarizing mix stays within delta of its base") {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    Channel phi = random_unital_channel(3, 3, rng);
    const double delta = 0.15;
    DepolarizingMix mix(phi, delta);
    CHECK(std::abs(mix.a - (1.0 - delta / 2.0)) < 1e-15);
    CHECK(channel_distance(mix.as_channel(), phi) <= delta);
  }
}

TEST_CASE("DepolarizingMix rejects delta outside (0,1]") {
  Channel id = identity_channel(2);
  CHECK_THROWS_AS(DepolarizingMix(id, 0.0), ConstructionError);
  CHECK_THROWS_AS(DepolarizingMix(id, 1.5), ConstructionError);
}

TEST_CASE("Choi/Kraus roundtrip defines the same map (random channels)") {
  Rng rng(31);
  std::uniform_int_distribution<int> dims(2, 4);
  std::uniform_int_distribution<int> ops(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    Channel e = random_unital_channel(dims(rng), ops(rng), rng);
    Channel rebuilt = kraus_from_choi(e.choi());
    CHECK(map_distance(rebuilt, e) < 1e-9);
    CHECK((rebuilt.choi() - e.choi()).norm() < 1e-9);
  }
}

TEST_CASE("superoperator is functorial under composition") {
  Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    Channel e1 = random_unital_channel(3, 2, rng);
    Channel e2 = random_unital_channel(3, 3, rng);
    CHECK(matrix_close(compose(e2, e1).superop(),
                       ComplexMatrix(e2.superop() * e1.superop()), 1e-11));
  }
}

TEST_CASE("Choi matrix is linear in the channel") {
  Rng rng(41);
  Channel phi = random_unital_channel(3, 3, rng);
  DepolarizingMix mix(phi, 0.4);
  ComplexMatrix expected =
      mix.a * phi.choi() + (1.0 - mix.a) * omega_channel(3).choi();
  CHECK(matrix_close(mix.as_channel().choi(), expected, 1e-11));
}

TEST_CASE("unital TP channels have spectrum in the closed unit disc") {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    Channel e = random_unital_channel(3, 4, rng);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(e.superop(), false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      CHECK(std::abs(es.eigenvalues()(i)) <= 1.0 + 1e-8);
    }
  }
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(compose(identity_channel(2), identity_channel(3)),
                  DimensionError);
  CHECK_THROWS_AS(channel_distance(identity_channel(2), identity_channel(3)),
                  DimensionError);
  CHECK_THROWS_AS(identity_channel(2).apply(ComplexMatrix::Zero(3, 3)),
                  DimensionError);
}

TEST_CASE("schur_channel rejects a non-PSD multiplier") {
  ComplexMatrix b(2, 2);
  b << 1.0, 2.0, 2.0, 1.0;  // eigenvalues {3, -1}
  CHECK_THROWS_AS(schur_channel(b), ConstructionError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "test_helpers.hpp"

#include "qchan/analysis.hpp"
#include "qchan/spectral.hpp"

using namespace qchan;
using qchan::testing::map_distance;
using qchan::testing::matrix_close;

namespace {

Channel diagonal_pinch(int d) {
  // Conditional expectation onto the diagonal algebra: x -> diag(x).
  std::vector<ComplexMatrix> kraus;
  for (int i = 0; i < d; ++i) kraus.push_back(matrix_unit(d, i, i));
  return Channel(std::move(kraus));
}

Channel cyclic_shift_pinch(int d) {
  // x -> u diag(x) u* with u the cyclic shift; permutes the diagonal.
  ComplexMatrix u = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) u((k + 1) % d, k) = 1.0;
  return compose(unitary_channel(u), diagonal_pinch(d));
}

}  // namespace

TEST_CASE("spectrum of elementary channels") {
  SpectralData id = spectrum(identity_channel(2));
  REQUIRE(id.eigenvalues.size() == 4);
  for (const auto& lambda : id.eigenvalues) {
    CHECK(std::abs(lambda - 1.0) < 1e-12);
  }
  CHECK(id.peripheral_count() == 4);

  SpectralData om = spectrum(omega_channel(2));
  CHECK(std::abs(om.eigenvalues[0] - 1.0) < 1e-12);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(om.eigenvalues[i]) < 1e-12);
  CHECK(om.peripheral_count() == 1);

  SpectralData sc = spectrum(schur_lambda_channel(0.5));
  CHECK(std::abs(sc.eigenvalues[0] - 1.0) < 1e-12);
  CHECK(std::abs(sc.eigenvalues[1] - 1.0) < 1e-12);
  CHECK(std::abs(sc.eigenvalues[2] - 0.5) < 1e-12);
  CHECK(std::abs(sc.eigenvalues[3] - 0.5) < 1e-12);
  CHECK(sc.peripheral_count() == 2);
}

TEST_CASE("eigenpairs satisfy the defining relation") {
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    Channel e = random_unital_channel(3, 3, rng);
    SpectralData sd = spectrum(e);
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      const auto& a = sd.right_eigenoperators[i];
      CHECK((e.apply(a) - sd.eigenvalues[i] * a).norm() <= 1e-8 * a.norm());
    }
  }
}

TEST_CASE("peripheral projection of a primitive channel is Omega") {
  Rng rng(3);
  Channel phi = random_unital_channel(3, 3, rng);
  Channel mix = DepolarizingMix(phi, 0.3).as_channel();
  Channel proj = peripheral_projection(mix);
  CHECK(channel_distance(proj, omega_channel(3)) < 1e-7);
}

TEST_CASE("peripheral projection of the lambda-Schur channel pinches the diagonal") {
  Channel proj = peripheral_projection(schur_lambda_channel(0.5));
  CHECK(map_distance(proj, diagonal_pinch(2)) < 1e-9);
}

TEST_CASE("peripheral projection of a unitary conjugation is the identity") {
  Rng rng(5);
  Channel u = unitary_channel(haar_unitary(3, rng));
  Channel proj = peripheral_projection(u);
  CHECK(map_distance(proj, identity_channel(3)) < 1e-9);
}

TEST_CASE("peripheral projection of the shifted pinch is the plain pinch") {
  Channel proj = peripheral_projection(cyclic_shift_pinch(3));
  CHECK(map_distance(proj, diagonal_pinch(3)) < 1e-9);
}

TEST_CASE("peripheral projection is an idempotent channel commuting with E") {
  Rng rng(7);
  std::vector<Channel> samples = {
      schur_lambda_channel(0.3), cyclic_shift_pinch(3),
      DepolarizingMix(random_unital_channel(3, 2, rng), 0.2).as_channel(),
      random_unital_channel(2, 3, rng)};
  for (const auto& e : samples) {
    Channel proj = peripheral_projection(e);
    ChannelFlags f = verify(proj, Tolerance{1e-7});
    CHECK(f.cp == Tri::yes);
    CHECK(f.tp == Tri::yes);
    CHECK(f.unital == Tri::yes);
    CHECK((proj.superop() * proj.superop() - proj.superop()).norm() < 1e-7);
    CHECK((proj.superop() * e.superop() - e.superop() * proj.superop()).norm() <
          1e-7);

    // Range of P = span of the peripheral eigenoperators.
    SpectralData sd = spectrum(e);
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      if (!sd.peripheral_mask[i]) continue;
      const auto& a = sd.right_eigenoperators[i];
      CHECK((proj.apply(a) - a).norm() < 1e-6 * a.norm());
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(proj.superop());
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > 1e-8) ++rank;
    }
    CHECK(rank == sd.peripheral_count());
  }
}

TEST_CASE("iterates converge to their peripheral projection") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Channel e = random_unital_channel(3, 5, rng);
    Channel proj = peripheral_projection(e);
    Channel en = power(e, 200);
    CHECK(channel_distance(en, compose(proj, en)) < 1e-5);
  }
}

TEST_CASE("primitive channels converge to Omega") {
  Rng rng(13);
  for (int trial = 0; trial < 5; ++trial) {
    Channel mix =
        DepolarizingMix(random_unital_channel(3, 3, rng), 0.3).as_channel();
    double best = 1.0;
    for (int n : {50, 100, 200}) {
      best = std::min(best, channel_distance(power(mix, n), omega_channel(3)));
      if (best < 1e-6) break;
    }
    CHECK(best < 1e-6);
  }
}

TEST_CASE("is_primitive examples") {
  CHECK(is_primitive(omega_channel(2)));
  Rng rng(17);
  CHECK_FALSE(is_primitive(unitary_channel(haar_unitary(2, rng))));
  CHECK_FALSE(is_primitive(schur_lambda_channel(0.5)));
  CHECK(is_primitive(
      DepolarizingMix(random_unital_channel(3, 2, rng), 0.3).as_channel()));
}

TEST_CASE("is_irreducible examples") {
  CHECK(is_irreducible(omega_channel(2)));
  CHECK_FALSE(is_irreducible(schur_lambda_channel(0.5)));
  ComplexMatrix b(3, 3);
  b.setOnes();
  b(0, 1) = b(1, 0) = 0.3;
  CHECK_FALSE(is_irreducible(schur_channel(b)));

  ComplexMatrix u = ComplexMatrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) u((k + 1) % 3, k) = 1.0;
  Channel mixed = DepolarizingMix(unitary_channel(u), 0.2).as_channel();
  CHECK(is_irreducible(mixed));
}

TEST_CASE("irreducible channels have abelian stabilized domains") {
  Rng rng(19);
  int tested = 0;
  while (tested < 20) {
    Channel e =
        DepolarizingMix(random_unital_channel(3, 2, rng), 0.15).as_channel();
    if (!is_irreducible(e)) continue;
    MdChain chain = md_chain(e);
    CHECK(is_abelian(chain.stabilized));
    ++tested;
  }
}

TEST_CASE("peripheral eigenoperators live in the multiplicative domain") {
  Rng rng(23);
  std::vector<Channel> samples = {schur_lambda_channel(0.5),
                                  cyclic_shift_pinch(3),
                                  example51_channel(3),
                                  random_unital_channel(3, 3, rng),
                                  unitary_channel(haar_unitary(2, rng))};
  for (const auto& e : samples) {
    StarAlgebra md = multiplicative_domain(e);
    SpectralData sd = spectrum(e);
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      if (!sd.peripheral_mask[i]) continue;
      CHECK(md.contains(sd.right_eigenoperators[i], Tolerance{1e-6}));
    }
  }
}

TEST_CASE("stabilized domain equals the algebra of peripheral eigenoperators") {
  Rng rng(29);
  int done = 0;
  std::uniform_int_distribution<int> ops(2, 4);
  while (done < 20) {
    Channel e = random_unital_channel(3, ops(rng), rng);
    MdChain chain = md_chain(e);
    SpectralData sd = spectrum(e);
    std::vector<ComplexMatrix> peripheral_ops;
    for (std::size_t i = 0; i < sd.eigenvalues.size(); ++i) {
      if (sd.peripheral_mask[i]) peripheral_ops.push_back(sd.right_eigenoperators[i]);
    }
    StarAlgebra generated = generated_algebra(3, peripheral_ops);
    CHECK(same_algebra(chain.stabilized, generated, Tolerance{1e-6}));
    ++done;
  }
}

TEST_CASE("spectral preconditions are enforced") {
  ComplexMatrix k1(2, 2), k2(2, 2);
  k1 << 1.0, 0.0, 0.0, std::sqrt(0.5), k2 << 0.0, std::sqrt(0.5), 0.0, 0.0;
  Channel damping({k1, k2});
  CHECK_THROWS_AS(peripheral_projection(damping), UnsupportedPreconditionError);
  CHECK_THROWS_AS(is_primitive(damping), UnsupportedPreconditionError);
}

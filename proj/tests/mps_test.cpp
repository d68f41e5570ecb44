#include "sfctn/mps.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"

using namespace sfctn;

namespace {

TermList1D plaquette(double lambda) {
  return map_to_chain({2, 1.0, lambda, Boundary::open}, SiteMapping::build_hilbert(2));
}

}  // namespace

TEST(Mps, ProductStates) {
  const auto up = MpsState::all_up(4);
  EXPECT_EQ(up.max_bond_dim(), 1u);
  Vector ref = Vector::Zero(16);
  ref(0) = 1.0;
  EXPECT_LE((up.to_statevector() - ref).norm(), 1e-14);

  const auto down = MpsState::all_down(3);
  ref = Vector::Zero(8);
  ref(7) = 1.0;
  EXPECT_LE((down.to_statevector() - ref).norm(), 1e-14);

  const std::vector<Eigen::Vector2d> local{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  const auto p = MpsState::product(local);
  ref = Vector::Zero(8);
  ref(2) = 1.0 / std::sqrt(2.0);
  ref(6) = 1.0 / std::sqrt(2.0);
  EXPECT_LE((p.to_statevector() - ref).norm(), 1e-14);
}

TEST(Mps, AllUpPlaquetteEnergy) {
  const auto mpo = build_mpo(plaquette(1.0));
  EXPECT_NEAR(mps_energy(MpsState::all_up(4), mpo), 4.0, 1e-14);
  EXPECT_NEAR(mps_energy(MpsState::all_down(4), mpo), -4.0, 1e-14);
}

TEST(Mps, RandomStateEnergyMatchesStatevector) {
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto terms = map_to_chain({2, 1.0, 1.7, Boundary::open}, SiteMapping::build(kind, 2));
    const auto mpo = build_mpo(terms);
    const Matrix h = oracle::term_matrix(terms);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto psi = MpsState::random(4, 3, seed);
      const Vector v = psi.to_statevector();
      EXPECT_NEAR(mps_energy(psi, mpo), oracle::expectation(v, h), 1e-10);
      EXPECT_NEAR(psi.norm_squared(), v.squaredNorm(), 1e-12);
    }
  }
  const auto terms = map_to_chain({3, 1.0, 0.6, Boundary::periodic}, SiteMapping::build_snake(3));
  const auto psi = MpsState::random(9, 4, 11);
  EXPECT_NEAR(mps_energy(psi, build_mpo(terms)), oracle::expectation(psi.to_statevector(), oracle::term_matrix(terms)),
              1e-10);
}

TEST(Mps, GaugeInvariance) {
  const auto terms = map_to_chain({3, 1.0, 2.0, Boundary::open}, SiteMapping::build_snake(3));
  const auto mpo = build_mpo(terms);
  auto psi = MpsState::random(9, 4, 5);
  const Vector v0 = psi.to_statevector();
  const double e0 = mps_energy(psi, mpo);
  const double z0 = mps_local_expectation(psi, 4, PauliAxis::z);
  for (std::size_t c : {8u, 3u, 0u, 6u}) {
    psi.move_center(c);
    EXPECT_EQ(psi.center(), c);
    EXPECT_LE(canonical_form_error(psi), 1e-12);
    EXPECT_LE((psi.to_statevector() - v0).norm(), 1e-12);
    EXPECT_NEAR(mps_energy(psi, mpo), e0, 1e-12);
    EXPECT_NEAR(mps_local_expectation(psi, 4, PauliAxis::z), z0, 1e-12);
  }
}

TEST(Mps, CanonicalAfterConstruction) {
  const auto psi = MpsState::random(10, 6, 2);
  EXPECT_EQ(psi.center(), 0u);
  EXPECT_LE(canonical_form_error(psi), 1e-12);
  EXPECT_LE(psi.max_bond_dim(), 6u);
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-12);
  EXPECT_EQ(psi.bond_dim(0), 2u);
  EXPECT_EQ(psi.bond_dim(8), 2u);
}

TEST(Mps, SiteTensorsRoundTrip) {
  const auto psi = MpsState::random(6, 4, 9);
  std::vector<DenseTensor> tensors;
  for (std::size_t k = 0; k < psi.num_sites(); ++k) tensors.push_back(psi.site_tensor(k));
  const auto back = MpsState::from_site_tensors(tensors);
  EXPECT_LE((back.to_statevector() - psi.to_statevector()).norm(), 1e-12);
}

TEST(Mps, LocalExpectationsMatchStatevector) {
  const auto psi = MpsState::random(6, 4, 21);
  const Vector v = psi.to_statevector();
  for (std::size_t k = 0; k < 6; ++k) {
    EXPECT_NEAR(mps_local_expectation(psi, k, PauliAxis::z), oracle::expectation(v, oracle::embed(oracle::pauli_z(), k, 6)),
                1e-12);
    EXPECT_NEAR(mps_local_expectation(psi, k, PauliAxis::x), oracle::expectation(v, oracle::embed(oracle::pauli_x(), k, 6)),
                1e-12);
  }
}

TEST(Mps, ExpectationOfWeightedSquare) {
  const auto psi = MpsState::random(5, 3, 4);
  const std::vector<double> w{0.2, -0.2, 0.2, -0.2, 0.2};
  Matrix s = Matrix::Zero(32, 32);
  for (std::size_t mu = 0; mu < 5; ++mu) s += w[mu] * oracle::embed(oracle::pauli_x(), mu, 5);
  EXPECT_NEAR(mps_expectation(psi, weighted_x_square_mpo(w)), oracle::expectation(psi.to_statevector(), s * s), 1e-12);
}

TEST(Mps, RejectsInvalid) {
  EXPECT_THROW(MpsState::random(0, 2, 1), std::invalid_argument);
  EXPECT_THROW(MpsState::random(4, 0, 1), std::invalid_argument);
}

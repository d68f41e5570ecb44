#include "sfctn/ed.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace sfctn;

namespace {

TermList1D lattice_terms(int n, double lambda, CurveKind kind, Boundary b = Boundary::open) {
  return map_to_chain({n, 1.0, lambda, b}, SiteMapping::build(kind, n));
}

}  // namespace

TEST(Ed, PlaquetteClassicalLimit) {
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto gs = ed_ground_state(lattice_terms(2, 0.0, kind));
    EXPECT_NEAR(gs.energy, -4.0, 1e-10);
    EXPECT_NEAR(gs.energy_density, -1.0, 1e-10);
  }
}

TEST(Ed, MatchesFrozenReferenceEnergies) {
  EXPECT_NEAR(ed_ground_state(lattice_terms(2, 1.0, CurveKind::hilbert)).energy, oracle::kEnergyN2Lambda1, 1e-9);
  EXPECT_NEAR(ed_ground_state(lattice_terms(4, 0.0, CurveKind::snake)).energy, oracle::kEnergyN4Lambda0, 1e-8);
  EXPECT_NEAR(ed_ground_state(lattice_terms(4, 1.0, CurveKind::hilbert)).energy, oracle::kEnergyN4Lambda1, 1e-8);
  const auto gs = ed_ground_state(lattice_terms(4, 2.9, CurveKind::hilbert));
  EXPECT_NEAR(gs.energy, oracle::kEnergyN4Lambda29, 1e-8);
  EXPECT_NEAR(gs.energy_density, oracle::kEnergyN4Lambda29 / 16.0, 1e-9);
  EXPECT_NEAR(gs.amplitudes.norm(), 1.0, 1e-12);
  EXPECT_NEAR(ed_ground_state(lattice_terms(4, 2.9, CurveKind::snake, Boundary::periodic)).energy,
              oracle::kEnergyN4Lambda29Pbc, 1e-8);
}

TEST(Ed, MatrixFreeEqualsDenseOracle) {
  for (auto b : {Boundary::open, Boundary::periodic}) {
    const auto terms = lattice_terms(3, 1.7, CurveKind::snake, b);
    const Matrix ref = oracle::term_matrix(terms);
    EXPECT_LE((dense_hamiltonian(terms) - ref).cwiseAbs().maxCoeff(), 1e-12);
    const Vector v = oracle::random_matrix(512, 1, 3);
    Vector out(512);
    apply_hamiltonian(terms, v, out);
    EXPECT_LE((out - ref * v).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Ed, GroundEnergyMatchesDenseOracleAtNine) {
  const auto terms = lattice_terms(3, 2.9, CurveKind::snake);
  EXPECT_NEAR(ed_ground_state(terms).energy, oracle::ground_energy(oracle::term_matrix(terms)), 1e-9);
}

TEST(Ed, MappingInvariance) {
  for (double lambda : {0.0, 0.5, 2.9}) {
    EXPECT_NEAR(ed_ground_state(lattice_terms(2, lambda, CurveKind::hilbert)).energy,
                ed_ground_state(lattice_terms(2, lambda, CurveKind::snake)).energy, 1e-9);
  }
  // 4 x 2 strip, two different site orders.
  auto strip = [](bool column_major) {
    std::vector<PairTerm> pairs;
    auto idx = [&](int x, int y) { return static_cast<ChainIndex>(column_major ? x * 2 + y : y * 4 + x); };
    for (int y = 0; y < 2; ++y) {
      for (int x = 0; x < 4; ++x) {
        if (x + 1 < 4) pairs.push_back({std::min(idx(x, y), idx(x + 1, y)), std::max(idx(x, y), idx(x + 1, y)), 1.0});
        if (y == 0) pairs.push_back({std::min(idx(x, 0), idx(x, 1)), std::max(idx(x, 0), idx(x, 1)), 1.0});
      }
    }
    return make_term_list(8, 1.1, pairs);
  };
  EXPECT_NEAR(ed_ground_state(strip(false)).energy, ed_ground_state(strip(true)).energy, 1e-9);
}

TEST(Ed, LocalExpectations) {
  const auto t0 = ed_ground_state(lattice_terms(2, 0.0, CurveKind::hilbert));
  for (ChainIndex mu = 0; mu < 4; ++mu) EXPECT_NEAR(ed_expectation(t0, mu, PauliAxis::z), 0.0, 1e-8);

  const auto strong = ed_ground_state(lattice_terms(2, 10.0, CurveKind::hilbert));
  for (ChainIndex mu = 0; mu < 4; ++mu) {
    EXPECT_NEAR(ed_expectation(strong, mu, PauliAxis::z), -1.0, 0.02);
    EXPECT_NEAR(ed_expectation(strong, mu, PauliAxis::x), 0.0, 1e-8);
  }
  const auto mid = ed_ground_state(lattice_terms(4, 2.9, CurveKind::snake));
  for (ChainIndex mu = 0; mu < 16; ++mu) EXPECT_NEAR(ed_expectation(mid, mu, PauliAxis::x), 0.0, 1e-7);
}

TEST(Ed, ExpectationsMatchStatevectorOracle) {
  const auto terms = lattice_terms(2, 1.3, CurveKind::snake);
  const auto gs = ed_ground_state(terms);
  for (ChainIndex mu = 0; mu < 4; ++mu) {
    EXPECT_NEAR(ed_expectation(gs, mu, PauliAxis::z), oracle::expectation(gs.amplitudes, oracle::embed(oracle::pauli_z(), mu, 4)),
                1e-12);
  }
  const Matrix xx = oracle::embed(oracle::pauli_x(), 0, 4) * oracle::embed(oracle::pauli_x(), 2, 4);
  EXPECT_NEAR(ed_correlation_xx(gs, 0, 2), oracle::expectation(gs.amplitudes, xx), 1e-12);
  const Vector w = (Vector(4) << 0.25, -0.25, 0.25, -0.25).finished();
  Matrix s = Matrix::Zero(16, 16);
  for (ChainIndex mu = 0; mu < 4; ++mu) s += w(static_cast<Eigen::Index>(mu)) * oracle::embed(oracle::pauli_x(), mu, 4);
  EXPECT_NEAR(ed_weighted_x_square(gs, w), oracle::expectation(gs.amplitudes, s * s), 1e-12);
}

TEST(Ed, StrongFieldAsymptote) {
  const auto gs = ed_ground_state(lattice_terms(2, 50.0, CurveKind::hilbert));
  EXPECT_LE(std::abs(gs.energy_density + 50.0), 0.05);
}

TEST(Ed, Deterministic) {
  const auto terms = lattice_terms(3, 2.9, CurveKind::snake);
  const auto a = ed_ground_state(terms);
  const auto b = ed_ground_state(terms);
  EXPECT_EQ(a.energy, b.energy);
  EXPECT_EQ(a.amplitudes, b.amplitudes);
}

TEST(Ed, RejectsOversizedSystems) {
  const auto terms = make_term_list(21, 1.0, {});
  EXPECT_THROW(ed_ground_state(terms), std::invalid_argument);
  EXPECT_THROW(dense_hamiltonian(make_term_list(13, 1.0, {})), std::invalid_argument);
}

#include "sfctn/dmrg.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace sfctn;

namespace {

TermList1D lattice_terms(int n, double lambda, CurveKind kind, Boundary b = Boundary::open) {
  return map_to_chain({n, 1.0, lambda, b}, SiteMapping::build(kind, n));
}

}  // namespace

TEST(Dmrg, PlaquetteExact) {
  DmrgConfig cfg;
  cfg.max_bond = 4;
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto r = dmrg_ground_state(build_mpo(lattice_terms(2, 0.0, kind)), cfg);
    EXPECT_NEAR(r.energy, -4.0, 1e-10);
    EXPECT_TRUE(r.trace.converged);
  }
}

TEST(Dmrg, MatchesEdAtSixteenSites) {
  DmrgConfig cfg;
  cfg.max_bond = 64;
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto terms = lattice_terms(4, 2.9, kind);
    const auto r = dmrg_ground_state(build_mpo(terms), cfg);
    EXPECT_NEAR(r.energy, oracle::kEnergyN4Lambda29, 1e-6);
    EXPECT_GE(r.energy, oracle::kEnergyN4Lambda29 - 1e-9);
    const auto ed = ed_ground_state(terms);
    for (std::size_t mu = 0; mu < 16; ++mu) {
      EXPECT_NEAR(mps_local_expectation(r.state, mu, PauliAxis::z), ed_expectation(ed, mu, PauliAxis::z), 1e-4);
    }
  }
}

TEST(Dmrg, PeriodicAndStrongField) {
  DmrgConfig cfg;
  cfg.max_bond = 64;
  // m = 64 truncates the periodic state, whose center bond needs 256.
  const double pbc = dmrg_ground_state(build_mpo(lattice_terms(4, 2.9, CurveKind::snake, Boundary::periodic)), cfg).energy;
  EXPECT_NEAR(pbc, oracle::kEnergyN4Lambda29Pbc, 1e-3);
  EXPECT_GE(pbc, oracle::kEnergyN4Lambda29Pbc - 1e-9);
  EXPECT_NEAR(dmrg_ground_state(build_mpo(lattice_terms(4, 6.0, CurveKind::hilbert)), cfg).energy,
              oracle::kEnergyN4Lambda6, 1e-6);
}

TEST(Dmrg, VariationalAndNonIncreasing) {
  const auto terms = lattice_terms(4, 1.0, CurveKind::snake);
  DmrgConfig cfg;
  cfg.max_bond = 6;
  cfg.energy_tol = 1e-13;
  cfg.num_sweeps = 8;
  const auto r = dmrg_ground_state(build_mpo(terms), cfg);
  EXPECT_GE(r.energy, oracle::kEnergyN4Lambda1 - 1e-9);
  const auto& e = r.trace.energies;
  ASSERT_FALSE(e.empty());
  for (std::size_t i = 1; i < e.size(); ++i) EXPECT_LE(e[i], e[i - 1] + 1e-9);
  EXPECT_EQ(r.trace.max_truncated_weight.size(), e.size());
  EXPECT_EQ(r.trace.wall_seconds.size(), e.size());
  EXPECT_LE(r.state.max_bond_dim(), 6u);
}

TEST(Dmrg, ReportedEnergyIsStateEnergy) {
  const auto mpo = build_mpo(lattice_terms(4, 2.9, CurveKind::hilbert));
  DmrgConfig cfg;
  cfg.max_bond = 8;
  const auto r = dmrg_ground_state(mpo, cfg);
  EXPECT_NEAR(r.energy, mps_energy(r.state, mpo), 1e-10);
  EXPECT_NEAR(r.energy, r.last_eigenvalue, 1e-6);
}

TEST(Dmrg, LargerBondIsNotWorse) {
  const auto mpo = build_mpo(lattice_terms(4, 2.9, CurveKind::snake));
  double prev = 0.0;
  for (std::size_t m : {2u, 4u, 8u, 16u}) {
    DmrgConfig cfg;
    cfg.max_bond = m;
    const double e = dmrg_ground_state(mpo, cfg).energy;
    if (m > 2) {
      EXPECT_LE(e, prev + 1e-8) << "m=" << m;
    }
    prev = e;
  }
}

TEST(Dmrg, DeterministicForFixedSeed) {
  const auto mpo = build_mpo(lattice_terms(4, 2.9, CurveKind::hilbert));
  DmrgConfig cfg;
  cfg.max_bond = 10;
  cfg.seed = 42;
  EXPECT_EQ(dmrg_ground_state(mpo, cfg).energy, dmrg_ground_state(mpo, cfg).energy);
}

TEST(Dmrg, AllDownStartAndExplicitInitial) {
  const auto mpo = build_mpo(lattice_terms(2, 1.0, CurveKind::hilbert));
  DmrgConfig cfg;
  cfg.max_bond = 4;
  cfg.initial = InitialState::all_down;
  EXPECT_EQ(initial_mps(4, cfg).max_bond_dim(), 1u);
  EXPECT_NEAR(dmrg_ground_state(mpo, cfg).energy, oracle::kEnergyN2Lambda1, 1e-9);
  EXPECT_NEAR(dmrg_ground_state(mpo, cfg, MpsState::random(4, 2, 3)).energy, oracle::kEnergyN2Lambda1, 1e-9);
}

TEST(Dmrg, RejectsInvalidConfig) {
  DmrgConfig cfg;
  cfg.max_bond = 0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
  cfg.max_bond = 4;
  cfg.energy_tol = 0.0;
  EXPECT_THROW(validate(cfg), std::invalid_argument);
}

#include "sfctn/mpo.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace sfctn;

TEST(Mpo, SinglePairIsXX) {
  const auto terms = make_term_list(2, 0.0, {{0, 1, 1.0}});
  const Matrix xx = oracle::embed(oracle::pauli_x(), 0, 2) * oracle::embed(oracle::pauli_x(), 1, 2);
  EXPECT_LE((mpo_to_dense(build_mpo(terms)) - xx).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Mpo, FieldOnly) {
  const auto terms = make_term_list(3, 0.4, {});
  EXPECT_LE((mpo_to_dense(build_mpo(terms)) - oracle::term_matrix(terms)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Mpo, DenseMatchesLatticeHamiltonian) {
  for (int n : {2, 3}) {
    for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
      if (kind == CurveKind::hilbert && n == 3) continue;
      for (auto b : {Boundary::open, Boundary::periodic}) {
        for (double lambda : {0.0, 1.0, 2.9}) {
          const auto mapping = SiteMapping::build(kind, n);
          const auto terms = map_to_chain({n, 1.0, lambda, b}, mapping);
          const Matrix ref = oracle::lattice_hamiltonian(n, lambda, b == Boundary::periodic, mapping);
          const Matrix got = mpo_to_dense(build_mpo(terms));
          // The doubled periodic bonds of the 2 x 2 lattice are counted twice in both.
          EXPECT_LE((got - ref).cwiseAbs().maxCoeff(), 1e-12) << "n=" << n << " lambda=" << lambda;
        }
      }
    }
  }
}

TEST(Mpo, AuxDimsAreTwoPlusOpenTerms) {
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    for (auto b : {Boundary::open, Boundary::periodic}) {
      const auto terms = map_to_chain({8, 1.0, 1.0, b}, SiteMapping::build(kind, 8));
      const auto mpo = build_mpo(terms);
      const auto open = open_terms_per_cut(terms);
      ASSERT_EQ(mpo.aux_dims.size(), open.size());
      for (std::size_t i = 0; i < open.size(); ++i) EXPECT_EQ(mpo.aux_dims[i], 2 + open[i]);
      ASSERT_EQ(mpo.sites.size(), 64u);
      EXPECT_EQ(mpo.sites.front().left_dim, 1u);
      EXPECT_EQ(mpo.sites.back().right_dim, 1u);
      for (std::size_t k = 0; k + 1 < mpo.sites.size(); ++k) EXPECT_EQ(mpo.sites[k].right_dim, mpo.sites[k + 1].left_dim);
    }
  }
}

TEST(Mpo, SnakeWidth) {
  const auto terms = map_to_chain({8, 1.0, 1.0, Boundary::open}, SiteMapping::build_snake(8));
  EXPECT_EQ(build_mpo(terms).max_aux_dim(), 11u);
}

TEST(Mpo, DenseSiteTensorMatchesEntries) {
  const auto terms = map_to_chain({2, 1.0, 0.3, Boundary::open}, SiteMapping::build_hilbert(2));
  const auto mpo = build_mpo(terms);
  const auto& site = mpo.sites[1];
  const auto t = site.dense();
  ASSERT_EQ(std::vector<std::size_t>(t.shape().begin(), t.shape().end()), (std::vector<std::size_t>{site.left_dim, site.right_dim, 2, 2}));
  DenseTensor ref({site.left_dim, site.right_dim, 2, 2});
  for (const auto& e : site.entries) {
    for (std::size_t o = 0; o < 2; ++o) {
      for (std::size_t i = 0; i < 2; ++i) ref({e.left, e.right, o, i}) += e.op(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(i));
    }
  }
  EXPECT_EQ(t, ref);
}

TEST(Mpo, WeightedXSquare) {
  const std::vector<double> w{0.5, -1.0, 0.25, 2.0};
  Matrix s = Matrix::Zero(16, 16);
  for (std::size_t mu = 0; mu < 4; ++mu) s += w[mu] * oracle::embed(oracle::pauli_x(), mu, 4);
  const auto mpo = weighted_x_square_mpo(w);
  EXPECT_LE(mpo.max_aux_dim(), 3u);
  EXPECT_LE((mpo_to_dense(mpo) - s * s).cwiseAbs().maxCoeff(), 1e-12);
}

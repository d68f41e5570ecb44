#include "sfctn/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sfctn/ed.hpp"

using namespace sfctn;

namespace {

std::set<std::pair<ChainIndex, ChainIndex>> pair_set(const TermList1D& t) {
  std::set<std::pair<ChainIndex, ChainIndex>> s;
  for (const auto& p : t.pairs) s.insert({p.mu, p.nu});
  return s;
}

}  // namespace

TEST(Edges, Counts) {
  EXPECT_EQ(edges_2d({2, 1.0, 0.0, Boundary::open}).size(), 4u);
  EXPECT_EQ(edges_2d({4, 1.0, 0.0, Boundary::open}).size(), 24u);
  EXPECT_EQ(edges_2d({4, 1.0, 0.0, Boundary::periodic}).size(), 32u);
  for (int n = 2; n <= 64; ++n) {
    const auto nn = static_cast<std::size_t>(n);
    EXPECT_EQ(edges_2d({n, 1.0, 0.0, Boundary::open}).size(), 2 * nn * (nn - 1));
    EXPECT_EQ(edges_2d({n, 1.0, 0.0, Boundary::periodic}).size(), 2 * nn * nn);
  }
}

TEST(Edges, AreNearestNeighbors) {
  for (const auto b : {Boundary::open, Boundary::periodic}) {
    const int n = 5;
    for (const auto& e : edges_2d({n, 1.0, 0.0, b})) {
      const int dx = std::abs(e.a.x - e.b.x);
      const int dy = std::abs(e.a.y - e.b.y);
      const bool direct = dx + dy == 1;
      const bool wrap = (dx == n - 1 && dy == 0) || (dy == n - 1 && dx == 0);
      EXPECT_TRUE(direct || (b == Boundary::periodic && wrap));
    }
  }
}

TEST(Model, RejectsInvalid) {
  EXPECT_THROW(validate(IsingModel2D{1, 1.0, 0.0, Boundary::open}), std::invalid_argument);
  EXPECT_THROW(validate(IsingModel2D{4, -1.0, 0.0, Boundary::open}), std::invalid_argument);
  const auto m = SiteMapping::build_snake(4);
  EXPECT_THROW(map_to_chain({2, 1.0, 0.0, Boundary::open}, m), std::invalid_argument);
}

TEST(MapToChain, PlaquetteBothCurves) {
  const std::set<std::pair<ChainIndex, ChainIndex>> cycle{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto t = map_to_chain({2, 1.0, 0.7, Boundary::open}, SiteMapping::build(kind, 2));
    EXPECT_EQ(pair_set(t), cycle);
    EXPECT_EQ(t.field, 0.7);
    EXPECT_EQ(t.num_sites, 4u);
    for (const auto& p : t.pairs) EXPECT_EQ(p.weight, 1.0);
  }
}

TEST(MapToChain, TermsSortedOrientedAndUnique) {
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    for (auto b : {Boundary::open, Boundary::periodic}) {
      const auto t = map_to_chain({8, 1.0, 1.0, b}, SiteMapping::build(kind, 8));
      EXPECT_TRUE(std::is_sorted(t.pairs.begin(), t.pairs.end(),
                                 [](const PairTerm& a, const PairTerm& c) { return std::tie(a.mu, a.nu) < std::tie(c.mu, c.nu); }));
      for (const auto& p : t.pairs) EXPECT_LT(p.mu, p.nu);
      EXPECT_EQ(pair_set(t).size(), t.pairs.size());
    }
  }
}

TEST(MapToChain, NearestChainNeighborsAreAllBonds) {
  for (int n : {4, 8, 16}) {
    for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
      const auto t = map_to_chain({n, 1.0, 0.0, Boundary::open}, SiteMapping::build(kind, n));
      const auto unit = std::count_if(t.pairs.begin(), t.pairs.end(), [](const PairTerm& p) { return p.nu - p.mu == 1; });
      EXPECT_EQ(static_cast<std::size_t>(unit), t.num_sites - 1);
    }
  }
}

TEST(MapToChain, SpectrumIsMappingInvariant) {
  for (int n : {2, 3}) {
    for (auto b : {Boundary::open, Boundary::periodic}) {
      const IsingModel2D model{n, 1.0, 1.3, b};
      const auto snake = SiteMapping::build_snake(n);
      const auto ref = oracle::lattice_hamiltonian(n, 1.3, b == Boundary::periodic, snake);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_ref(ref, Eigen::EigenvaluesOnly);
      std::vector<SiteMapping> mappings{snake};
      if (n == 2) mappings.push_back(SiteMapping::build_hilbert(2));
      for (const auto& m : mappings) {
        const auto h = oracle::term_matrix(map_to_chain(model, m));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
        EXPECT_LT((es.eigenvalues() - es_ref.eigenvalues()).cwiseAbs().maxCoeff(), 1e-10);
      }
    }
  }
}

TEST(MapToChain, PbcTwoByTwoKeepsDoubledBonds) {
  const auto t = map_to_chain({2, 1.0, 0.0, Boundary::periodic}, SiteMapping::build_hilbert(2));
  EXPECT_EQ(t.pairs.size(), 8u);
  EXPECT_NEAR(oracle::ground_energy(oracle::term_matrix(t)), -8.0, 1e-12);
}

TEST(Histogram, PlaquetteChainCounts) {
  for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
    const auto h = distance_histogram(map_to_chain({2, 1.0, 0.0, Boundary::open}, SiteMapping::build(kind, 2)),
                                      Geometry::chain);
    const std::map<std::size_t, std::size_t> expected{{1, 3}, {3, 1}};
    EXPECT_EQ(h.counts, expected);
  }
}

TEST(Histogram, SnakeAndHilbertAtSixteen) {
  const IsingModel2D model{16, 1.0, 0.0, Boundary::open};
  const auto snake = map_to_chain(model, SiteMapping::build_snake(16));
  const auto hilbert = map_to_chain(model, SiteMapping::build_hilbert(16));
  const auto hs = distance_histogram(snake, Geometry::chain);
  const auto hh = distance_histogram(hilbert, Geometry::chain);
  EXPECT_EQ(hs.max_distance(), 31u);
  EXPECT_EQ(hs.total(), 480u);
  EXPECT_EQ(hh.total(), 480u);
  // Snake: 240 unit bonds plus one vertical bond of length 2k + 1 per k < 16 per row pair.
  EXPECT_DOUBLE_EQ(hs.mean(), 8.5);
  EXPECT_EQ(hh.max_distance(), 213u);
  EXPECT_LT(distance_histogram(hilbert, Geometry::tree).mean(), distance_histogram(snake, Geometry::tree).mean());
}

TEST(Histogram, NormalizedSumsToOne) {
  for (auto geom : {Geometry::chain, Geometry::tree}) {
    for (auto kind : {CurveKind::hilbert, CurveKind::snake}) {
      const auto h = distance_histogram(map_to_chain({8, 1.0, 0.0, Boundary::periodic}, SiteMapping::build(kind, 8)), geom);
      double sum = 0.0;
      for (const auto& [d, p] : h.normalized) sum += p;
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(Histogram, TreeNeedsPowerOfTwo) {
  const auto t = map_to_chain({3, 1.0, 0.0, Boundary::open}, SiteMapping::build_snake(3));
  EXPECT_THROW(distance_histogram(t, Geometry::tree), std::invalid_argument);
}

TEST(Histogram, CsvRoundTrip) {
  const auto h = distance_histogram(map_to_chain({8, 1.0, 0.0, Boundary::open}, SiteMapping::build_hilbert(8)),
                                    Geometry::tree);
  const auto back = histogram_from_csv(histogram_to_csv(h), Geometry::tree);
  EXPECT_EQ(back.counts, h.counts);
  EXPECT_EQ(back.normalized, h.normalized);
}

TEST(OpenTerms, Examples) {
  const auto t = map_to_chain({2, 1.0, 0.0, Boundary::open}, SiteMapping::build_hilbert(2));
  EXPECT_EQ(open_terms_per_cut(t), (std::vector<std::size_t>{2, 2, 2}));
  const auto single = make_term_list(6, 0.0, {{0, 5, 1.0}});
  EXPECT_EQ(open_terms_per_cut(single), (std::vector<std::size_t>(5, 1)));
  const auto empty = make_term_list(5, 1.0, {});
  EXPECT_EQ(open_terms_per_cut(empty), (std::vector<std::size_t>(4, 0)));
}

TEST(OpenTerms, MatchesBruteForce) {
  const auto t = map_to_chain({8, 1.0, 0.0, Boundary::periodic}, SiteMapping::build_hilbert(8));
  const auto cuts = open_terms_per_cut(t);
  for (std::size_t b = 0; b + 1 < t.num_sites; ++b) {
    const auto count = std::count_if(t.pairs.begin(), t.pairs.end(), [&](const PairTerm& p) { return p.mu <= b && b < p.nu; });
    EXPECT_EQ(cuts[b], static_cast<std::size_t>(count));
  }
}

TEST(TermList, JsonRoundTripAndValidation) {
  const auto t = map_to_chain({4, 1.0, 2.9, Boundary::periodic}, SiteMapping::build_snake(4));
  EXPECT_EQ(term_list_from_json(term_list_to_json(t)), t);
  EXPECT_THROW(make_term_list(4, 0.0, {{2, 2, 1.0}}), std::invalid_argument);
  EXPECT_THROW(make_term_list(4, 0.0, {{0, 4, 1.0}}), std::invalid_argument);
}

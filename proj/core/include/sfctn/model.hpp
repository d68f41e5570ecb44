#pragma once

// 2D transverse-field Ising model
//
//   H = J sum_<i,j> X_i X_j + lambda sum_i Z_i
//
// on an n x n lattice, and its relabeling onto a chain through a SiteMapping.
// The result is a long-range 1D Hamiltonian stored as explicit pair terms.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sfctn/spacefill.hpp"

namespace sfctn {

enum class Boundary { open, periodic };

std::string_view to_string(Boundary b);
/// Accepts "obc"/"open" and "pbc"/"periodic".
Boundary parse_boundary(std::string_view text);

struct Edge2D {
  LatticeCoord a;
  LatticeCoord b;
};

struct IsingModel2D {
  int n = 2;
  double coupling = 1.0;  // J > 0: antiferromagnetic
  double field = 0.0;     // lambda
  Boundary boundary = Boundary::open;
};

struct PairTerm {
  ChainIndex mu = 0;
  ChainIndex nu = 0;  // mu < nu
  double weight = 0.0;

  friend bool operator==(const PairTerm&, const PairTerm&) = default;
};

/// Mapped chain Hamiltonian: sum_t w_t X_mu X_nu + field * sum_mu Z_mu.
struct TermList1D {
  std::size_t num_sites = 0;
  double field = 0.0;
  std::vector<PairTerm> pairs;  // sorted by (mu, nu)

  friend bool operator==(const TermList1D&, const TermList1D&) = default;
};

/// Throws std::invalid_argument unless n >= 2 and J > 0.
void validate(const IsingModel2D& model);

/// Nearest-neighbor bonds. Periodic boundaries add the n wraparound bonds of
/// every row and every column. For n = 2 the wraparound bond joins the same
/// two sites as the direct bond and is kept as a separate (doubled) bond.
std::vector<Edge2D> edges_2d(const IsingModel2D& model);

TermList1D map_to_chain(const IsingModel2D& model, const SiteMapping& mapping);

/// Builds and validates a term list from raw pairs (sorts them).
TermList1D make_term_list(std::size_t num_sites, double field, std::vector<PairTerm> pairs);

enum class Geometry { chain, tree };

std::string_view to_string(Geometry g);
Geometry parse_geometry(std::string_view text);

struct DistanceHistogram {
  Geometry geometry = Geometry::chain;
  std::map<std::size_t, std::size_t> counts;
  std::map<std::size_t, double> normalized;

  std::size_t total() const;
  double mean() const;
  std::size_t max_distance() const;
  /// Probability mass at distances >= threshold.
  double mass_at_or_above(std::size_t threshold) const;
};

DistanceHistogram distance_histogram(const TermList1D& terms, Geometry geometry);

/// Entry b counts pair terms (mu, nu) with mu <= b < nu.
std::vector<std::size_t> open_terms_per_cut(const TermList1D& terms);

std::string term_list_to_json(const TermList1D& terms);
TermList1D term_list_from_json(std::string_view text);

/// "distance,count,probability" rows.
std::string histogram_to_csv(const DistanceHistogram& h);
DistanceHistogram histogram_from_csv(std::string_view text, Geometry geometry);

}  // namespace sfctn

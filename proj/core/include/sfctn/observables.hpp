#pragma once

// Measurements on converged states, laid out on the 2D lattice.

#include <string>
#include <string_view>
#include <vector>

#include "sfctn/ed.hpp"
#include "sfctn/mps.hpp"
#include "sfctn/run_result.hpp"
#include "sfctn/spacefill.hpp"
#include "sfctn/ttn.hpp"

namespace sfctn {

/// Per-site values on an n x n lattice.
class MagnetizationMap {
 public:
  MagnetizationMap() = default;
  explicit MagnetizationMap(int n);
  MagnetizationMap(int n, std::vector<double> values);  // row-major, y * n + x

  int n() const { return n_; }
  double at(LatticeCoord c) const;
  double& at(LatticeCoord c);
  const std::vector<double>& values() const { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

/// zeta(x, y) = (-1)^(x + y).
struct StaggeredSign {
  int n = 0;

  int at(LatticeCoord c) const { return ((c.x + c.y) % 2 == 0) ? 1 : -1; }
  /// zeta / n^2 in chain order.
  std::vector<double> chain_weights(const SiteMapping& mapping) const;
};

struct StaggeredMagnetization {
  double squared = 0.0;     // (1/n^4) sum_ij zeta_i zeta_j <X_i X_j>
  double root = 0.0;        // sqrt(squared)
  double signed_sum = 0.0;  // (1/n^2) sum_i zeta_i <X_i>
};

StaggeredMagnetization staggered_magnetization(const MpsState& state, const SiteMapping& mapping);
StaggeredMagnetization staggered_magnetization(const TtnState& state, const SiteMapping& mapping);
StaggeredMagnetization staggered_magnetization(const EdGroundState& state, const SiteMapping& mapping);

MagnetizationMap local_z_map(const MpsState& state, const SiteMapping& mapping);
MagnetizationMap local_z_map(const TtnState& state, const SiteMapping& mapping);
MagnetizationMap local_z_map(const EdGroundState& state, const SiteMapping& mapping);

/// |a - b| per site. Throws std::invalid_argument on size mismatch.
MagnetizationMap magnetization_difference(const MagnetizationMap& a, const MagnetizationMap& b);

/// E_S - E_H in energy-density units. Throws std::invalid_argument unless
/// the runs share n, lambda, boundary, engine and m and are snake / hilbert.
double energy_difference(const RunResult& snake, const RunResult& hilbert);

/// True for sites adjacent to a line splitting the lattice into quadrants,
/// i.e. x or y in {n/2 - 1, n/2}.
bool on_quadrant_boundary(int n, LatticeCoord c);

struct RegionMeans {
  double bulk = 0.0;
  double boundary = 0.0;
};

RegionMeans region_means(const MagnetizationMap& map);

/// n lines of n comma-separated values; line y holds row y, x ascending.
std::string map_to_csv(const MagnetizationMap& map);
MagnetizationMap map_from_csv(std::string_view text);
std::string map_to_json(const MagnetizationMap& map);
MagnetizationMap map_from_json(std::string_view text);

}  // namespace sfctn

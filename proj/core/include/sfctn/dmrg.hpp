#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sfctn/mpo.hpp"
#include "sfctn/mps.hpp"

namespace sfctn {

enum class InitialState { random, all_down };

struct DmrgConfig {
  std::size_t max_bond = 20;   // m
  int num_sweeps = 30;
  double energy_tol = 1e-9;    // per site, on the change between sweeps
  double lanczos_tol = 1e-10;
  int lanczos_max_iter = 200;
  double svd_cutoff = 1e-12;
  std::uint64_t seed = 1;
  InitialState initial = InitialState::random;
  std::size_t initial_bond = 8;  // random start uses min(max_bond, initial_bond)
};

/// Throws std::invalid_argument unless max_bond >= 1 and tolerances > 0.
void validate(const DmrgConfig& config);

struct ConvergenceTrace {
  std::vector<double> energies;              // after each sweep
  std::vector<double> max_truncated_weight;  // per sweep
  std::vector<double> wall_seconds;          // per sweep
  bool converged = false;
};

struct DmrgResult {
  MpsState state;
  ConvergenceTrace trace;
  double energy = 0.0;            // <psi|H|psi> of the returned state
  double last_eigenvalue = 0.0;   // final local Lanczos eigenvalue
};

/// Two-site DMRG. A sweep runs left to right and back; each bond solves the
/// effective two-site problem with lanczos_smallest and splits it with
/// truncated_svd at max_bond. Stops once the per-sweep energy change drops
/// below energy_tol * num_sites or after num_sweeps sweeps (converged = false).
/// Throws std::runtime_error if a NaN appears.
DmrgResult dmrg_ground_state(const MpoOperator& mpo, const DmrgConfig& config,
                             std::optional<MpsState> initial = std::nullopt);

/// Starting state used when no explicit one is given.
MpsState initial_mps(std::size_t num_sites, const DmrgConfig& config);

}  // namespace sfctn

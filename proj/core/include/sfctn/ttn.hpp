#pragma once

// Binary tree tensor network over N = 2^L chain sites.
//
// Tensors are the internal nodes of a perfect binary tree in heap numbering
// with the root removed: node h in [2, N) has children 2h and 2h+1 (a child
// c >= N is the physical leaf c - N) and is linked upward to h / 2. The two
// top tensors 2 and 3 are joined directly by a single link. Leaf mu sits at
// chain position mu, so every subtree covers a contiguous block of sites.
//
// Each node tensor has shape (child0, child1, parent).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sfctn/dmrg.hpp"
#include "sfctn/ed.hpp"
#include "sfctn/model.hpp"
#include "sfctn/tensor.hpp"

namespace sfctn {

using TtnNode = std::size_t;

class TtnState {
 public:
  TtnState() = default;

  /// Random isometries at full allowed bond dimension min(m, 2^sites below),
  /// isometry center at node 2.
  static TtnState random(std::size_t num_leaves, std::size_t max_bond, std::uint64_t seed);
  /// Bond dimension 1 product state; local[mu] holds (up, down) amplitudes.
  static TtnState product(std::span<const Eigen::Vector2d> local);
  static TtnState all_up(std::size_t num_leaves);
  /// Node tensors for h = 2 .. N-1 in order; the center tensor may be
  /// non-isometric.
  static TtnState from_nodes(std::size_t num_leaves, std::vector<DenseTensor> nodes,
                             TtnNode center);

  std::size_t num_leaves() const { return num_leaves_; }
  std::size_t num_levels() const;
  TtnNode center() const { return center_; }
  TtnNode first_node() const { return 2; }
  TtnNode end_node() const { return num_leaves_; }

  const DenseTensor& node(TtnNode h) const;
  DenseTensor& node(TtnNode h);

  /// Dimension of the link above heap position c (a node or a leaf >= N).
  /// The top link is reported for both c = 2 and c = 3.
  std::size_t link_dim(std::size_t c) const;
  std::size_t max_bond_dim() const;

  /// Moves the isometry center along the tree path with exact QR steps.
  void move_center(TtnNode target);
  void normalize();
  double norm_squared() const;

  /// Max deviation from identity of the isometry condition of every
  /// non-center tensor toward the center.
  double isometry_error() const;

  /// Amplitudes in the basis of ed.hpp; at most kMaxEdSites leaves.
  Vector to_statevector() const;

  /// Leg of node h that points to neighbor q (0, 1 children; 2 parent/top).
  static int leg_toward(TtnNode h, TtnNode q);
  /// Neighbor of h across its parent leg.
  TtnNode parent_of(TtnNode h) const;
  /// Node path from `from` to `to`, both included.
  std::vector<TtnNode> path(TtnNode from, TtnNode to) const;

 private:
  void step_center(TtnNode to);

  std::size_t num_leaves_ = 0;
  std::vector<DenseTensor> nodes_;  // index h; entries 0 and 1 unused
  TtnNode center_ = 2;
};

struct TtnConfig {
  std::size_t max_bond = 20;  // m
  int num_sweeps = 30;
  double energy_tol = 1e-9;   // per site
  double lanczos_tol = 1e-10;
  int lanczos_max_iter = 120;
  std::uint64_t seed = 1;
};

void validate(const TtnConfig& config);

struct TtnResult {
  TtnState state;
  ConvergenceTrace trace;
  double energy = 0.0;           // ttn_energy of the returned state
  double last_eigenvalue = 0.0;
};

/// Single-tensor variational sweeps. Nodes are visited in depth-first
/// pre-order from node 2 (Euler tour); at each node the effective
/// Hamiltonian is assembled from cached block environments and its smallest
/// eigenpair replaces the tensor. Throws std::invalid_argument for
/// non-power-of-two or fewer than 4 sites.
TtnResult ttn_ground_state(const TermList1D& terms, const TtnConfig& config,
                           std::optional<TtnState> initial = std::nullopt);

/// <H> / <psi|psi>, term by term through freshly built environments.
double ttn_energy(const TtnState& state, const TermList1D& terms);

/// <sigma^axis_leaf> with the center moved to the leaf's parent.
double ttn_local_expectation(const TtnState& state, std::size_t leaf, PauliAxis axis);

/// <(sum_mu w_mu X_mu)^2>.
double ttn_weighted_x_square(const TtnState& state, std::span<const double> weights);

}  // namespace sfctn

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sfctn/ed.hpp"
#include "sfctn/mpo.hpp"
#include "sfctn/tensor.hpp"

namespace sfctn {

/// Open-boundary matrix product state of spin-1/2 sites in mixed canonical
/// form: sites left of center() are left-isometric, sites right of it are
/// right-isometric.
class MpsState {
 public:
  /// site(k)[s] is the (left bond x right bond) matrix for physical index s.
  using SiteTensor = std::array<Matrix, 2>;

  MpsState() = default;

  /// Product state; local[k] holds the amplitudes (up, down) of site k.
  static MpsState product(std::span<const Eigen::Vector2d> local);
  static MpsState all_up(std::size_t num_sites);
  static MpsState all_down(std::size_t num_sites);
  /// Translationally uniform random MPS: every site is cut from one random
  /// bulk tensor of bond dimension `bond`, then canonicalized with center 0.
  static MpsState random(std::size_t num_sites, std::size_t bond, std::uint64_t seed);
  /// From 3-leg tensors (left, physical, right); canonicalized with center 0.
  static MpsState from_site_tensors(const std::vector<DenseTensor>& tensors);

  std::size_t num_sites() const { return sites_.size(); }
  std::size_t center() const { return center_; }
  const SiteTensor& site(std::size_t k) const { return sites_.at(k); }
  SiteTensor& site(std::size_t k) { return sites_.at(k); }
  /// Dimension of bond b between sites b and b+1.
  std::size_t bond_dim(std::size_t b) const { return sites_.at(b)[0].cols(); }
  std::size_t max_bond_dim() const;

  /// Moves the orthogonality center by QR sweeps; exact (no truncation).
  void move_center(std::size_t to);
  /// Scales the center tensor to unit norm.
  void normalize();
  double norm_squared() const;

  DenseTensor site_tensor(std::size_t k) const;
  /// Full amplitude vector in the basis of ed.hpp; at most kMaxEdSites sites.
  Vector to_statevector() const;

  /// For bookkeeping by solvers that rebuild tensors in place.
  void set_center(std::size_t c) { center_ = c; }

 private:
  void left_orthonormalize(std::size_t k);
  void right_orthonormalize(std::size_t k);

  std::vector<SiteTensor> sites_;
  std::size_t center_ = 0;
};

/// <psi| O |psi> / <psi|psi> for an operator given as an MPO.
double mps_expectation(const MpsState& state, const MpoOperator& mpo);

/// <psi|H|psi> / <psi|psi> by a full left-to-right contraction.
double mps_energy(const MpsState& state, const MpoOperator& mpo);

/// <sigma^axis_site>, evaluated at the moved orthogonality center.
double mps_local_expectation(const MpsState& state, std::size_t site, PauliAxis axis);

/// Max deviation from the identity of A^T A (left of center) or A A^T
/// (right of center) over all sites.
double canonical_form_error(const MpsState& state);

}  // namespace sfctn

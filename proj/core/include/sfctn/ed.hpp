#pragma once

// Exact diagonalization of a chain term list on the full 2^N space.
//
// Basis convention shared by every engine: basis state index
// i = sum_mu s_mu 2^mu, with s_mu = 0 for Z = +1 (up) and s_mu = 1 for
// Z = -1 (down).

#include <cstddef>
#include <cstdint>

#include "sfctn/model.hpp"
#include "sfctn/tensor.hpp"

namespace sfctn {

enum class PauliAxis { x, z };

inline constexpr std::size_t kMaxEdSites = 20;

struct EdGroundState {
  std::size_t num_sites = 0;
  double energy = 0.0;
  double energy_density = 0.0;
  Vector amplitudes;
  double residual = 0.0;
};

/// out = H in, matrix-free: X_mu X_nu flips two bits, the field is diagonal.
void apply_hamiltonian(const TermList1D& terms, const Vector& in, Vector& out);

/// Explicit 2^N x 2^N matrix; test oracle for N <= 12.
Matrix dense_hamiltonian(const TermList1D& terms);

/// Throws std::invalid_argument above kMaxEdSites and std::runtime_error when
/// Lanczos does not reach `tol`.
EdGroundState ed_ground_state(const TermList1D& terms, double tol = 1e-10,
                              std::uint64_t seed = 0x5eed);

double ed_expectation(const EdGroundState& state, ChainIndex site, PauliAxis axis);

/// <X_a X_b>.
double ed_correlation_xx(const EdGroundState& state, ChainIndex a, ChainIndex b);

/// <(sum_mu w_mu X_mu)^2> computed as a squared norm.
double ed_weighted_x_square(const EdGroundState& state, const Vector& weights);

}  // namespace sfctn

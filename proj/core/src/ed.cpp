#include "sfctn/ed.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sfctn/lanczos.hpp"

namespace sfctn {

namespace {

std::size_t basis_size(std::size_t num_sites) { return std::size_t{1} << num_sites; }

void check_site(const EdGroundState& state, ChainIndex site) {
  if (site >= state.num_sites) throw std::out_of_range("ed: site index out of range");
}

}  // namespace

void apply_hamiltonian(const TermList1D& terms, const Vector& in, Vector& out) {
  const auto dim = static_cast<Eigen::Index>(basis_size(terms.num_sites));
  if (in.size() != dim) throw std::invalid_argument("apply_hamiltonian: vector size mismatch");
  out.resize(dim);
  const auto n = static_cast<int>(terms.num_sites);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int down = std::popcount(static_cast<std::uint64_t>(i));
    out(i) = terms.field * static_cast<double>(n - 2 * down) * in(i);
  }
  for (const auto& t : terms.pairs) {
    const auto mask = static_cast<Eigen::Index>((std::size_t{1} << t.mu) | (std::size_t{1} << t.nu));
    for (Eigen::Index i = 0; i < dim; ++i) out(i) += t.weight * in(i ^ mask);
  }
}

Matrix dense_hamiltonian(const TermList1D& terms) {
  if (terms.num_sites > 12) throw std::invalid_argument("dense_hamiltonian: at most 12 sites");
  const auto dim = static_cast<Eigen::Index>(basis_size(terms.num_sites));
  Matrix h = Matrix::Zero(dim, dim);
  Vector e = Vector::Zero(dim);
  Vector col(dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    e(j) = 1.0;
    apply_hamiltonian(terms, e, col);
    h.col(j) = col;
    e(j) = 0.0;
  }
  return h;
}

EdGroundState ed_ground_state(const TermList1D& terms, double tol, std::uint64_t seed) {
  if (terms.num_sites > kMaxEdSites) {
    throw std::invalid_argument("ed_ground_state: " + std::to_string(terms.num_sites) +
                                " sites exceeds the limit of " + std::to_string(kMaxEdSites));
  }
  if (terms.num_sites == 0) throw std::invalid_argument("ed_ground_state: empty system");
  const auto dim = static_cast<Eigen::Index>(basis_size(terms.num_sites));

  LanczosOptions opts;
  opts.tol = tol;
  opts.seed = seed;
  opts.max_iter = 3000;
  opts.krylov_dim = static_cast<int>(std::min<Eigen::Index>(dim, 60));
  const auto result = lanczos_smallest(
      [&terms](const Vector& in, Vector& out) { apply_hamiltonian(terms, in, out); },
      Vector::Zero(dim), opts);
  if (!result.converged) {
    throw std::runtime_error("ed_ground_state: Lanczos did not converge (residual " +
                             std::to_string(result.residual) + ")");
  }
  EdGroundState gs;
  gs.num_sites = terms.num_sites;
  gs.energy = result.eigenvalue;
  gs.energy_density = result.eigenvalue / static_cast<double>(terms.num_sites);
  gs.amplitudes = result.eigenvector;
  gs.residual = result.residual;
  return gs;
}

double ed_expectation(const EdGroundState& state, ChainIndex site, PauliAxis axis) {
  check_site(state, site);
  const auto& psi = state.amplitudes;
  const auto bit = static_cast<Eigen::Index>(std::size_t{1} << site);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (axis == PauliAxis::z) {
      acc += ((i & bit) ? -1.0 : 1.0) * psi(i) * psi(i);
    } else {
      acc += psi(i) * psi(i ^ bit);
    }
  }
  return acc;
}

double ed_correlation_xx(const EdGroundState& state, ChainIndex a, ChainIndex b) {
  check_site(state, a);
  check_site(state, b);
  if (a == b) return state.amplitudes.squaredNorm();
  const auto mask = static_cast<Eigen::Index>((std::size_t{1} << a) | (std::size_t{1} << b));
  const auto& psi = state.amplitudes;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) acc += psi(i) * psi(i ^ mask);
  return acc;
}

double ed_weighted_x_square(const EdGroundState& state, const Vector& weights) {
  if (static_cast<std::size_t>(weights.size()) != state.num_sites) {
    throw std::invalid_argument("ed_weighted_x_square: weight vector size mismatch");
  }
  const auto& psi = state.amplitudes;
  Vector phi = Vector::Zero(psi.size());
  for (std::size_t mu = 0; mu < state.num_sites; ++mu) {
    const auto bit = static_cast<Eigen::Index>(std::size_t{1} << mu);
    for (Eigen::Index i = 0; i < psi.size(); ++i) phi(i) += weights(static_cast<Eigen::Index>(mu)) * psi(i ^ bit);
  }
  return phi.squaredNorm();
}

}  // namespace sfctn

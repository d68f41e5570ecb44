#include "sfctn/dmrg.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mps_env.hpp"
#include "sfctn/lanczos.hpp"

namespace sfctn {

namespace {

using detail::Environment;

// Effective Hamiltonian of sites (k, k+1). Vector layout: four column-major
// (dl x dr) blocks ordered by (s1, s2).
class TwoSiteOperator {
 public:
  TwoSiteOperator(const Environment& left, const MpoSite& w1, const MpoSite& w2,
                  const Environment& right, Eigen::Index dl, Eigen::Index dr)
      : left_(left), w1_(w1), w2_(w2), right_(right), dl_(dl), dr_(dr) {}

  Eigen::Index size() const { return 4 * dl_ * dr_; }

  void apply(const Vector& in, Vector& out) const {
    const auto block = dl_ * dr_;
    auto theta = [&](int s1, int s2) {
      return Eigen::Map<const Matrix>(in.data() + (2 * s1 + s2) * block, dl_, dr_);
    };

    // partial[b][2 * t1 + s2] = sum W1[a,b](t1,s1) L[a] theta[s1,s2]
    std::vector<std::array<Matrix, 4>> partial(w1_.right_dim);
    std::vector<bool> partial_used(w1_.right_dim, false);
    std::vector<std::array<Matrix, 4>> lt(w1_.left_dim);
    std::vector<bool> lt_ready(w1_.left_dim, false);
    for (const auto& e : w1_.entries) {
      if (!lt_ready[e.left]) {
        for (int s1 = 0; s1 < 2; ++s1) {
          for (int s2 = 0; s2 < 2; ++s2) lt[e.left][2 * s1 + s2].noalias() = left_[e.left] * theta(s1, s2);
        }
        lt_ready[e.left] = true;
      }
      if (!partial_used[e.right]) {
        for (auto& m : partial[e.right]) m = Matrix::Zero(dl_, dr_);
        partial_used[e.right] = true;
      }
      for (int t1 = 0; t1 < 2; ++t1) {
        for (int s1 = 0; s1 < 2; ++s1) {
          const double c = e.op(t1, s1);
          if (c == 0.0) continue;
          for (int s2 = 0; s2 < 2; ++s2) partial[e.right][2 * t1 + s2] += c * lt[e.left][2 * s1 + s2];
        }
      }
    }

    out.setZero(size());
    Matrix tr(dl_, dr_);
    for (const auto& e : w2_.entries) {
      if (!partial_used[e.left]) continue;
      for (int s2 = 0; s2 < 2; ++s2) {
        if (e.op(0, s2) == 0.0 && e.op(1, s2) == 0.0) continue;
        for (int t1 = 0; t1 < 2; ++t1) {
          tr.noalias() = partial[e.left][2 * t1 + s2] * right_[e.right].transpose();
          for (int t2 = 0; t2 < 2; ++t2) {
            const double c = e.op(t2, s2);
            if (c == 0.0) continue;
            Eigen::Map<Matrix>(out.data() + (2 * t1 + t2) * block, dl_, dr_) += c * tr;
          }
        }
      }
    }
  }

 private:
  const Environment& left_;
  const MpoSite& w1_;
  const MpoSite& w2_;
  const Environment& right_;
  Eigen::Index dl_;
  Eigen::Index dr_;
};

}  // namespace

void validate(const DmrgConfig& config) {
  if (config.max_bond < 1) throw std::invalid_argument("DMRG: max_bond must be >= 1");
  if (config.num_sweeps < 1) throw std::invalid_argument("DMRG: num_sweeps must be >= 1");
  if (!(config.energy_tol > 0.0) || !(config.lanczos_tol > 0.0)) {
    throw std::invalid_argument("DMRG: tolerances must be positive");
  }
}

MpsState initial_mps(std::size_t num_sites, const DmrgConfig& config) {
  if (config.initial == InitialState::all_down) return MpsState::all_down(num_sites);
  return MpsState::random(num_sites, std::min(config.max_bond, config.initial_bond), config.seed);
}

DmrgResult dmrg_ground_state(const MpoOperator& mpo, const DmrgConfig& config,
                             std::optional<MpsState> initial) {
  validate(config);
  const auto n = mpo.num_sites;
  if (n < 2) throw std::invalid_argument("DMRG: need at least two sites");
  MpsState state = initial ? std::move(*initial) : initial_mps(n, config);
  if (state.num_sites() != n) throw std::invalid_argument("DMRG: initial state has wrong size");
  state.move_center(0);
  state.normalize();

  std::vector<Environment> left(n + 1), right(n + 1);
  left[0] = detail::trivial_environment();
  right[n] = detail::trivial_environment();
  for (std::size_t k = n - 1; k >= 2; --k) {
    right[k] = detail::extend_right(right[k + 1], state.site(k), mpo.sites[k]);
  }

  LanczosOptions lopts;
  lopts.tol = config.lanczos_tol;
  lopts.max_iter = config.lanczos_max_iter;
  lopts.krylov_dim = 32;
  const TruncationPolicy policy{config.max_bond, config.svd_cutoff};

  DmrgResult result;
  double max_tw = 0.0;
  double eigenvalue = 0.0;
  std::size_t solves = 0;

  auto optimize_bond = [&](std::size_t k, bool moving_right, int sweep) {
    auto& a = state.site(k);
    auto& b = state.site(k + 1);
    const auto dl = a[0].rows();
    const auto dr = b[0].cols();
    const auto block = dl * dr;
    Vector theta(4 * block);
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        Eigen::Map<Matrix>(theta.data() + (2 * s1 + s2) * block, dl, dr).noalias() = a[s1] * b[s2];
      }
    }
    const TwoSiteOperator op(left[k], mpo.sites[k], mpo.sites[k + 1], right[k + 2], dl, dr);
    lopts.seed = config.seed + 7919 * (solves++);
    const auto eig = lanczos_smallest(
        [&op](const Vector& in, Vector& out) { op.apply(in, out); }, theta, lopts);
    if (!std::isfinite(eig.eigenvalue) || !eig.eigenvector.allFinite()) {
      throw std::runtime_error("DMRG: non-finite local eigenpair at sweep " +
                               std::to_string(sweep) + ", bond " + std::to_string(k));
    }
    eigenvalue = eig.eigenvalue;

    // Rows (s1, alpha), columns (s2, beta).
    Matrix m(2 * dl, 2 * dr);
    for (int s1 = 0; s1 < 2; ++s1) {
      for (int s2 = 0; s2 < 2; ++s2) {
        m.block(s1 * dl, s2 * dr, dl, dr) =
            Eigen::Map<const Matrix>(eig.eigenvector.data() + (2 * s1 + s2) * block, dl, dr);
      }
    }
    auto svd = truncated_svd(m, policy);
    max_tw = std::max(max_tw, svd.truncated_weight);
    svd.singular_values /= svd.singular_values.norm();
    if (moving_right) {
      const Matrix sv = svd.singular_values.asDiagonal() * svd.right.transpose();
      for (int s = 0; s < 2; ++s) {
        a[s] = svd.left.middleRows(s * dl, dl);
        b[s] = sv.middleCols(s * dr, dr);
      }
      state.set_center(k + 1);
      left[k + 1] = detail::extend_left(left[k], a, mpo.sites[k]);
    } else {
      const Matrix us = svd.left * svd.singular_values.asDiagonal();
      const Matrix vt = svd.right.transpose();
      for (int s = 0; s < 2; ++s) {
        a[s] = us.middleRows(s * dl, dl);
        b[s] = vt.middleCols(s * dr, dr);
      }
      state.set_center(k);
      right[k + 1] = detail::extend_right(right[k + 2], b, mpo.sites[k + 1]);
    }
  };

  double previous = 0.0;
  for (int sweep = 0; sweep < config.num_sweeps; ++sweep) {
    const auto start = std::chrono::steady_clock::now();
    max_tw = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) optimize_bond(k, true, sweep);
    for (std::size_t k = n - 1; k-- > 0;) optimize_bond(k, false, sweep);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    result.trace.energies.push_back(eigenvalue);
    result.trace.max_truncated_weight.push_back(max_tw);
    result.trace.wall_seconds.push_back(elapsed.count());
    if (sweep > 0 && std::abs(eigenvalue - previous) < config.energy_tol * static_cast<double>(n)) {
      result.trace.converged = true;
      break;
    }
    previous = eigenvalue;
  }

  result.last_eigenvalue = eigenvalue;
  result.energy = mps_energy(state, mpo);
  if (!std::isfinite(result.energy)) throw std::runtime_error("DMRG: non-finite final energy");
  result.state = std::move(state);
  return result;
}

}  // namespace sfctn

#include "sfctn/mps.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "mps_env.hpp"

namespace sfctn {

namespace detail {

Environment extend_left(const Environment& left, const MpsState::SiteTensor& a, const MpoSite& w) {
  const auto dr = a[0].cols();
  Environment out(w.right_dim, Matrix::Zero(dr, dr));
  // L[a] * A[s'] is shared by every entry leaving state a.
  std::vector<std::array<Matrix, 2>> la(w.left_dim);
  std::vector<bool> ready(w.left_dim, false);
  for (const auto& e : w.entries) {
    if (!ready[e.left]) {
      la[e.left] = {left[e.left] * a[0], left[e.left] * a[1]};
      ready[e.left] = true;
    }
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) {
        const double c = e.op(s, sp);
        if (c != 0.0) out[e.right].noalias() += c * a[s].transpose() * la[e.left][sp];
      }
    }
  }
  return out;
}

Environment extend_right(const Environment& right, const MpsState::SiteTensor& a,
                         const MpoSite& w) {
  const auto dl = a[0].rows();
  Environment out(w.left_dim, Matrix::Zero(dl, dl));
  std::vector<std::array<Matrix, 2>> ra(w.right_dim);
  std::vector<bool> ready(w.right_dim, false);
  for (const auto& e : w.entries) {
    if (!ready[e.right]) {
      ra[e.right] = {right[e.right] * a[0].transpose(), right[e.right] * a[1].transpose()};
      ready[e.right] = true;
    }
    for (int s = 0; s < 2; ++s) {
      for (int sp = 0; sp < 2; ++sp) {
        const double c = e.op(s, sp);
        if (c != 0.0) out[e.left].noalias() += c * a[s] * ra[e.right][sp];
      }
    }
  }
  return out;
}

}  // namespace detail

MpsState MpsState::product(std::span<const Eigen::Vector2d> local) {
  if (local.empty()) throw std::invalid_argument("MpsState::product: empty chain");
  MpsState state;
  for (const auto& v : local) {
    SiteTensor t{Matrix::Constant(1, 1, v(0)), Matrix::Constant(1, 1, v(1))};
    state.sites_.push_back(std::move(t));
  }
  state.center_ = 0;
  for (std::size_t k = state.num_sites(); k-- > 1;) state.right_orthonormalize(k);
  state.normalize();
  return state;
}

MpsState MpsState::all_up(std::size_t num_sites) {
  return product(std::vector<Eigen::Vector2d>(num_sites, Eigen::Vector2d(1.0, 0.0)));
}

MpsState MpsState::all_down(std::size_t num_sites) {
  return product(std::vector<Eigen::Vector2d>(num_sites, Eigen::Vector2d(0.0, 1.0)));
}

MpsState MpsState::random(std::size_t num_sites, std::size_t bond, std::uint64_t seed) {
  if (num_sites == 0) throw std::invalid_argument("MpsState::random: empty chain");
  if (bond == 0) throw std::invalid_argument("MpsState::random: bond must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const auto d = static_cast<Eigen::Index>(bond);
  SiteTensor bulk;
  for (auto& m : bulk) {
    m.resize(d, d);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  }
  // Bond b may not exceed 2^(b+1) or 2^(N-b-1).
  auto cap = [num_sites, d](std::size_t left_sites) {
    const auto right_sites = num_sites - left_sites;
    const auto smaller = std::min(left_sites, right_sites);
    if (smaller >= 30) return d;
    return std::min<Eigen::Index>(d, Eigen::Index{1} << smaller);
  };
  MpsState state;
  for (std::size_t k = 0; k < num_sites; ++k) {
    const auto dl = cap(k);
    const auto dr = cap(k + 1);
    state.sites_.push_back({bulk[0].topLeftCorner(dl, dr), bulk[1].topLeftCorner(dl, dr)});
  }
  state.center_ = num_sites - 1;
  state.move_center(0);
  state.normalize();
  return state;
}

MpsState MpsState::from_site_tensors(const std::vector<DenseTensor>& tensors) {
  if (tensors.empty()) throw std::invalid_argument("MpsState: no site tensors");
  MpsState state;
  std::size_t prev_right = 1;
  for (const auto& t : tensors) {
    if (t.rank() != 3 || t.dim(1) != 2) {
      throw std::invalid_argument("MpsState: site tensors must have shape (left, 2, right)");
    }
    if (t.dim(0) != prev_right) throw std::invalid_argument("MpsState: bond dimension mismatch");
    prev_right = t.dim(2);
    SiteTensor s;
    for (std::size_t p = 0; p < 2; ++p) {
      s[p].resize(static_cast<Eigen::Index>(t.dim(0)), static_cast<Eigen::Index>(t.dim(2)));
      for (std::size_t i = 0; i < t.dim(0); ++i) {
        for (std::size_t j = 0; j < t.dim(2); ++j) {
          s[p](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = t({i, p, j});
        }
      }
    }
    state.sites_.push_back(std::move(s));
  }
  if (prev_right != 1) throw std::invalid_argument("MpsState: right boundary bond must be 1");
  state.center_ = state.num_sites() - 1;
  state.move_center(0);
  state.normalize();
  return state;
}

std::size_t MpsState::max_bond_dim() const {
  std::size_t m = 1;
  for (std::size_t b = 0; b + 1 < num_sites(); ++b) m = std::max(m, bond_dim(b));
  return m;
}

void MpsState::left_orthonormalize(std::size_t k) {
  auto& a = sites_[k];
  const auto dl = a[0].rows();
  const auto dr = a[0].cols();
  Matrix stacked(2 * dl, dr);
  stacked << a[0], a[1];
  const auto qr = thin_qr(stacked);
  a[0] = qr.q.topRows(dl);
  a[1] = qr.q.bottomRows(dl);
  auto& next = sites_[k + 1];
  next[0] = qr.r * next[0];
  next[1] = qr.r * next[1];
}

void MpsState::right_orthonormalize(std::size_t k) {
  auto& a = sites_[k];
  const auto dl = a[0].rows();
  const auto dr = a[0].cols();
  Matrix wide(dl, 2 * dr);
  wide << a[0], a[1];
  const auto qr = thin_qr(wide.transpose());
  const Matrix qt = qr.q.transpose();  // r x 2dr, orthonormal rows
  a[0] = qt.leftCols(dr);
  a[1] = qt.rightCols(dr);
  auto& prev = sites_[k - 1];
  prev[0] = prev[0] * qr.r.transpose();
  prev[1] = prev[1] * qr.r.transpose();
}

void MpsState::move_center(std::size_t to) {
  if (to >= num_sites()) throw std::out_of_range("move_center: site out of range");
  while (center_ < to) left_orthonormalize(center_++);
  while (center_ > to) right_orthonormalize(center_--);
}

void MpsState::normalize() {
  auto& c = sites_[center_];
  const double nrm = std::sqrt(c[0].squaredNorm() + c[1].squaredNorm());
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::runtime_error("MpsState: zero or non-finite norm");
  c[0] /= nrm;
  c[1] /= nrm;
}

double MpsState::norm_squared() const {
  Matrix env = Matrix::Ones(1, 1);
  for (const auto& a : sites_) env = a[0].transpose() * env * a[0] + a[1].transpose() * env * a[1];
  return env(0, 0);
}

DenseTensor MpsState::site_tensor(std::size_t k) const {
  const auto& a = sites_.at(k);
  const auto dl = static_cast<std::size_t>(a[0].rows());
  const auto dr = static_cast<std::size_t>(a[0].cols());
  DenseTensor t({dl, 2, dr});
  for (std::size_t i = 0; i < dl; ++i) {
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t j = 0; j < dr; ++j) {
        t({i, p, j}) = a[p](static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      }
    }
  }
  return t;
}

Vector MpsState::to_statevector() const {
  if (num_sites() > kMaxEdSites) throw std::invalid_argument("to_statevector: too many sites");
  Matrix psi = Matrix::Ones(1, 1);
  for (const auto& a : sites_) {
    Matrix next(2 * psi.rows(), a[0].cols());
    next.topRows(psi.rows()) = psi * a[0];
    next.bottomRows(psi.rows()) = psi * a[1];
    psi = std::move(next);
  }
  return psi.col(0);
}

double mps_expectation(const MpsState& state, const MpoOperator& mpo) {
  if (mpo.num_sites != state.num_sites()) {
    throw std::invalid_argument("mps_expectation: MPO and MPS sizes differ");
  }
  auto env = detail::trivial_environment();
  for (std::size_t k = 0; k < state.num_sites(); ++k) {
    env = detail::extend_left(env, state.site(k), mpo.sites[k]);
  }
  return env[0](0, 0) / state.norm_squared();
}

double mps_energy(const MpsState& state, const MpoOperator& mpo) {
  return mps_expectation(state, mpo);
}

double mps_local_expectation(const MpsState& state, std::size_t site, PauliAxis axis) {
  if (site >= state.num_sites()) throw std::out_of_range("mps_local_expectation: bad site");
  MpsState moved = state;
  moved.move_center(site);
  const auto& a = moved.site(site);
  const double norm = a[0].squaredNorm() + a[1].squaredNorm();
  if (axis == PauliAxis::z) return (a[0].squaredNorm() - a[1].squaredNorm()) / norm;
  return 2.0 * a[0].cwiseProduct(a[1]).sum() / norm;
}

double canonical_form_error(const MpsState& state) {
  double err = 0.0;
  for (std::size_t k = 0; k < state.num_sites(); ++k) {
    if (k == state.center()) continue;
    const auto& a = state.site(k);
    Matrix g;
    if (k < state.center()) {
      g = a[0].transpose() * a[0] + a[1].transpose() * a[1];
    } else {
      g = a[0] * a[0].transpose() + a[1] * a[1].transpose();
    }
    err = std::max(err, (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  return err;
}

}  // namespace sfctn

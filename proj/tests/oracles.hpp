#pragma once

// Reference implementations used only by the tests. They share no code with
// the library beyond plain data types.

#include <Eigen/Dense>

#include <cstddef>
#include <random>
#include <utility>
#include <vector>

#include "sfctn/model.hpp"
#include "sfctn/spacefill.hpp"
#include "sfctn/tensor.hpp"

namespace oracle {

// Hilbert order by quadrant recursion: BL holds the transposed level below,
// TL and TR shifted copies, BR the anti-transpose.
inline std::vector<sfctn::LatticeCoord> hilbert_order(int n) {
  if (n == 1) return {{0, 0}};
  const int h = n / 2;
  const auto sub = hilbert_order(h);
  std::vector<sfctn::LatticeCoord> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (const auto& c : sub) out.push_back({c.y, c.x});
  for (const auto& c : sub) out.push_back({c.x, c.y + h});
  for (const auto& c : sub) out.push_back({c.x + h, c.y + h});
  for (const auto& c : sub) out.push_back({h - 1 - c.y + h, h - 1 - c.x});
  return out;
}

inline std::vector<std::pair<sfctn::LatticeCoord, sfctn::LatticeCoord>> lattice_bonds(int n, bool periodic) {
  std::vector<std::pair<sfctn::LatticeCoord, sfctn::LatticeCoord>> b;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (x + 1 < n) b.push_back({{x, y}, {x + 1, y}});
      if (y + 1 < n) b.push_back({{x, y}, {x, y + 1}});
    }
  }
  if (periodic) {
    for (int y = 0; y < n; ++y) b.push_back({{n - 1, y}, {0, y}});
    for (int x = 0; x < n; ++x) b.push_back({{x, n - 1}, {x, 0}});
  }
  return b;
}

inline Eigen::MatrixXd pauli_x() { return (Eigen::MatrixXd(2, 2) << 0, 1, 1, 0).finished(); }
inline Eigen::MatrixXd pauli_z() { return (Eigen::MatrixXd(2, 2) << 1, 0, 0, -1).finished(); }

// Operator `op` on bit `site` of an N-site register, bit 0 least significant.
inline Eigen::MatrixXd embed(const Eigen::MatrixXd& op, std::size_t site, std::size_t num_sites) {
  const Eigen::Index dim = Eigen::Index{1} << num_sites;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int s = static_cast<int>((col >> site) & 1);
    for (int t = 0; t < 2; ++t) {
      const double v = op(t, s);
      if (v == 0.0) continue;
      const Eigen::Index row = (col & ~(Eigen::Index{1} << site)) | (Eigen::Index{t} << site);
      m(row, col) += v;
    }
  }
  return m;
}

// Dense 2D Hamiltonian with lattice site (x, y) placed on chain bit M(x, y).
inline Eigen::MatrixXd lattice_hamiltonian(int n, double lambda, bool periodic, const sfctn::SiteMapping& mapping) {
  const auto sites = static_cast<std::size_t>(n * n);
  const Eigen::Index dim = Eigen::Index{1} << sites;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [a, b] : lattice_bonds(n, periodic)) {
    h += embed(pauli_x(), mapping.index(a), sites) * embed(pauli_x(), mapping.index(b), sites);
  }
  for (std::size_t mu = 0; mu < sites; ++mu) h += lambda * embed(pauli_z(), mu, sites);
  return h;
}

inline Eigen::MatrixXd term_matrix(const sfctn::TermList1D& terms) {
  const auto n = terms.num_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& t : terms.pairs) h += t.weight * embed(pauli_x(), t.mu, n) * embed(pauli_x(), t.nu, n);
  for (std::size_t mu = 0; mu < n; ++mu) h += terms.field * embed(pauli_z(), mu, n);
  return h;
}

inline double ground_energy(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double expectation(const Eigen::VectorXd& psi, const Eigen::MatrixXd& op) {
  return psi.dot(op * psi) / psi.squaredNorm();
}

// Bit-level expectations for registers too large for dense operators.
inline double z_expectation(const Eigen::VectorXd& psi, std::size_t site) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) s += psi(i) * psi(i) * (((i >> site) & 1) ? -1.0 : 1.0);
  return s / psi.squaredNorm();
}

inline double xx_expectation(const Eigen::VectorXd& psi, std::size_t a, std::size_t b) {
  const Eigen::Index flip = (Eigen::Index{1} << a) ^ (Eigen::Index{1} << b);
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) s += psi(i) * psi(i ^ flip);
  return s / psi.squaredNorm();
}

inline double x_expectation(const Eigen::VectorXd& psi, std::size_t site) {
  const Eigen::Index flip = Eigen::Index{1} << site;
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) s += psi(i) * psi(i ^ flip);
  return s / psi.squaredNorm();
}

inline double energy(const Eigen::VectorXd& psi, const sfctn::TermList1D& terms) {
  double e = 0.0;
  for (const auto& t : terms.pairs) e += t.weight * xx_expectation(psi, t.mu, t.nu);
  for (std::size_t mu = 0; mu < terms.num_sites; ++mu) e += terms.field * z_expectation(psi, mu);
  return e;
}

inline sfctn::DenseTensor random_tensor(std::vector<std::size_t> shape, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  sfctn::DenseTensor t(std::move(shape));
  for (auto& v : t.data()) v = normal(rng);
  return t;
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
  return m;
}

// Ground energies from an independent sparse eigensolver (scipy eigsh),
// OBC unless noted.
inline constexpr double kEnergyN2Lambda1 = -5.226251859505502;
inline constexpr double kEnergyN4Lambda0 = -24.0;
inline constexpr double kEnergyN4Lambda1 = -26.8605046395278;
inline constexpr double kEnergyN4Lambda29 = -48.679408439822936;
inline constexpr double kEnergyN4Lambda6 = -97.01970323292463;
inline constexpr double kEnergyN4Lambda29Pbc = -50.081532837147364;

}  // namespace oracle

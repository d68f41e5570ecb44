#include "sfctn/mpo.hpp"

#include <algorithm>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace sfctn {

namespace pauli {
LocalOperator identity() { return LocalOperator::Identity(); }
LocalOperator x() {
  LocalOperator m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}
LocalOperator z() {
  LocalOperator m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}
}  // namespace pauli

DenseTensor MpoSite::dense() const {
  DenseTensor t({left_dim, right_dim, 2, 2});
  for (const auto& e : entries) {
    for (std::size_t s = 0; s < 2; ++s) {
      for (std::size_t sp = 0; sp < 2; ++sp) {
        t({e.left, e.right, s, sp}) += e.op(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(sp));
      }
    }
  }
  return t;
}

std::size_t MpoOperator::max_aux_dim() const {
  return aux_dims.empty() ? 1 : *std::max_element(aux_dims.begin(), aux_dims.end());
}

namespace {

// Index layout of an automaton bond: initial, final, then extra states.
// The chain boundaries keep only initial (left end) or final (right end).
struct BondLayout {
  bool left_end = false;
  bool right_end = false;

  std::size_t initial() const { return 0; }
  std::size_t final_state() const { return right_end ? 0 : 1; }
  std::size_t extra(std::size_t k) const { return 2 + k; }
};

}  // namespace

MpoOperator build_mpo(const TermList1D& terms) {
  const auto n = terms.num_sites;
  if (n == 0) throw std::invalid_argument("build_mpo: empty chain");

  // carriers[b] lists term ids open across bond b, in term order.
  std::vector<std::vector<std::size_t>> carriers(n > 0 ? n - 1 : 0);
  for (std::size_t t = 0; t < terms.pairs.size(); ++t) {
    for (auto b = terms.pairs[t].mu; b < terms.pairs[t].nu; ++b) carriers[b].push_back(t);
  }
  auto slot = [&carriers](std::size_t bond, std::size_t term) {
    const auto& c = carriers[bond];
    return static_cast<std::size_t>(std::lower_bound(c.begin(), c.end(), term) - c.begin());
  };

  MpoOperator mpo;
  mpo.num_sites = n;
  for (std::size_t b = 0; b + 1 < n; ++b) mpo.aux_dims.push_back(2 + carriers[b].size());

  const auto id = pauli::identity();
  const auto x = pauli::x();
  const auto z = pauli::z();

  // Terms starting, passing, and ending at each site.
  std::vector<std::vector<std::size_t>> starts(n), ends(n);
  for (std::size_t t = 0; t < terms.pairs.size(); ++t) {
    starts[terms.pairs[t].mu].push_back(t);
    ends[terms.pairs[t].nu].push_back(t);
  }

  for (std::size_t k = 0; k < n; ++k) {
    const bool first = k == 0;
    const bool last = k + 1 == n;
    MpoSite site;
    site.left_dim = first ? 1 : mpo.aux_dims[k - 1];
    site.right_dim = last ? 1 : mpo.aux_dims[k];
    const BondLayout left{.left_end = first, .right_end = false};
    const BondLayout right{.left_end = false, .right_end = last};

    if (!last) site.entries.push_back({left.initial(), right.initial(), id});
    if (!first) site.entries.push_back({left.final_state(), right.final_state(), id});
    if (terms.field != 0.0) {
      site.entries.push_back({left.initial(), right.final_state(), terms.field * z});
    }
    for (auto t : starts[k]) {
      site.entries.push_back({left.initial(), right.extra(slot(k, t)), terms.pairs[t].weight * x});
    }
    if (!first && !last) {
      for (auto t : carriers[k - 1]) {
        if (terms.pairs[t].nu > k) {
          site.entries.push_back({left.extra(slot(k - 1, t)), right.extra(slot(k, t)), id});
        }
      }
    }
    for (auto t : ends[k]) {
      site.entries.push_back({left.extra(slot(k - 1, t)), right.final_state(), x});
    }
    mpo.sites.push_back(std::move(site));
  }
  return mpo;
}

MpoOperator weighted_x_square_mpo(const std::vector<double>& weights) {
  const auto n = weights.size();
  if (n == 0) throw std::invalid_argument("weighted_x_square_mpo: empty chain");
  MpoOperator mpo;
  mpo.num_sites = n;
  mpo.aux_dims.assign(n - 1, 3);
  const auto id = pauli::identity();
  const auto x = pauli::x();
  for (std::size_t k = 0; k < n; ++k) {
    const bool first = k == 0;
    const bool last = k + 1 == n;
    const BondLayout left{.left_end = first, .right_end = false};
    const BondLayout right{.left_end = false, .right_end = last};
    const double w = weights[k];
    MpoSite site;
    site.left_dim = first ? 1 : 3;
    site.right_dim = last ? 1 : 3;
    if (!last) {
      site.entries.push_back({left.initial(), right.initial(), id});
      site.entries.push_back({left.initial(), right.extra(0), w * x});
    }
    // i == j contributes w^2 X^2 = w^2 I.
    site.entries.push_back({left.initial(), right.final_state(), w * w * id});
    if (!first) {
      if (!last) site.entries.push_back({left.extra(0), right.extra(0), id});
      site.entries.push_back({left.extra(0), right.final_state(), 2.0 * w * x});
      site.entries.push_back({left.final_state(), right.final_state(), id});
    }
    mpo.sites.push_back(std::move(site));
  }
  return mpo;
}

Matrix mpo_to_dense(const MpoOperator& mpo) {
  if (mpo.num_sites > 12) throw std::invalid_argument("mpo_to_dense: at most 12 sites");
  // partial[b]: operator on sites 0..k with right auxiliary state b.
  std::vector<Matrix> partial(1, Matrix::Identity(1, 1));
  for (const auto& site : mpo.sites) {
    const auto dim = partial.front().rows() * 2;
    std::vector<Matrix> next(site.right_dim, Matrix::Zero(dim, dim));
    for (const auto& e : site.entries) {
      next[e.right] += Eigen::kroneckerProduct(Matrix(e.op), partial[e.left]).eval();
    }
    partial = std::move(next);
  }
  return partial.front();
}

}  // namespace sfctn

#include "sfctn/ttn.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "sfctn/lanczos.hpp"
#include "sfctn/mpo.hpp"

namespace sfctn {

namespace {

using ConstRowMap = Eigen::Map<const RowMajorMatrix>;
using RowMap = Eigen::Map<RowMajorMatrix>;

Eigen::Index idim(const DenseTensor& t, std::size_t axis) {
  return static_cast<Eigen::Index>(t.dim(axis));
}

// (M on `leg`) t, i.e. t'(.., i, ..) = sum_j M(i, j) t(.., j, ..).
DenseTensor apply_leg(const DenseTensor& t, int leg, const Matrix& m) {
  const auto d0 = idim(t, 0), d1 = idim(t, 1), d2 = idim(t, 2);
  const auto r = m.rows();
  switch (leg) {
    case 0: {
      DenseTensor out({static_cast<std::size_t>(r), t.dim(1), t.dim(2)});
      out.as_matrix(1).noalias() = m * t.as_matrix(1);
      return out;
    }
    case 2: {
      DenseTensor out({t.dim(0), t.dim(1), static_cast<std::size_t>(r)});
      out.as_matrix(2).noalias() = t.as_matrix(2) * m.transpose();
      return out;
    }
    default: {
      DenseTensor out({t.dim(0), static_cast<std::size_t>(r), t.dim(2)});
      for (Eigen::Index i = 0; i < d0; ++i) {
        RowMap(out.data().data() + i * r * d2, r, d2).noalias() =
            m * ConstRowMap(t.data().data() + i * d1 * d2, d1, d2);
      }
      return out;
    }
  }
}

// G(i, j) = sum over the other two legs of a(.., i, ..) b(.., j, ..).
Matrix gram(const DenseTensor& a, const DenseTensor& b, int leg) {
  switch (leg) {
    case 0:
      return a.as_matrix(1) * b.as_matrix(1).transpose();
    case 2:
      return a.as_matrix(2).transpose() * b.as_matrix(2);
    default: {
      const auto d0 = idim(a, 0), d1 = idim(a, 1), d2 = idim(a, 2);
      Matrix g = Matrix::Zero(d1, d1);
      for (Eigen::Index i = 0; i < d0; ++i) {
        g.noalias() += ConstRowMap(a.data().data() + i * d1 * d2, d1, d2) *
                       ConstRowMap(b.data().data() + i * d1 * d2, d1, d2).transpose();
      }
      return g;
    }
  }
}

double dot(const DenseTensor& a, const DenseTensor& b) {
  return std::inner_product(a.data().begin(), a.data().end(), b.data().begin(), 0.0);
}

void add_to(DenseTensor& acc, const DenseTensor& t) {
  auto dst = acc.data();
  auto src = t.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
}

// Rows: the two other legs (in order); columns: `leg`.
Matrix matricize(const DenseTensor& t, int leg) {
  const auto d0 = idim(t, 0), d1 = idim(t, 1), d2 = idim(t, 2);
  switch (leg) {
    case 2:
      return t.as_matrix(2);
    case 0:
      return t.as_matrix(1).transpose();
    default: {
      Matrix m(d0 * d2, d1);
      for (Eigen::Index i = 0; i < d0; ++i) {
        m.middleRows(i * d2, d2) = ConstRowMap(t.data().data() + i * d1 * d2, d1, d2).transpose();
      }
      return m;
    }
  }
}

DenseTensor unmatricize(const Matrix& m, int leg, std::array<std::size_t, 3> shape) {
  shape[static_cast<std::size_t>(leg)] = static_cast<std::size_t>(m.cols());
  DenseTensor t({shape[0], shape[1], shape[2]});
  const auto d0 = static_cast<Eigen::Index>(shape[0]);
  const auto d1 = static_cast<Eigen::Index>(shape[1]);
  const auto d2 = static_cast<Eigen::Index>(shape[2]);
  switch (leg) {
    case 2:
      t.as_matrix(2) = m;
      break;
    case 0:
      t.as_matrix(1) = m.transpose();
      break;
    default:
      for (Eigen::Index i = 0; i < d0; ++i) {
        RowMap(t.data().data() + i * d1 * d2, d1, d2) = m.middleRows(i * d2, d2).transpose();
      }
      break;
  }
  return t;
}

std::array<std::size_t, 3> shape3(const DenseTensor& t) { return {t.dim(0), t.dim(1), t.dim(2)}; }

std::size_t depth_of(std::size_t c) { return static_cast<std::size_t>(std::bit_width(c)) - 1; }

// Contiguous chain range [lo, hi) under heap position c.
std::pair<std::size_t, std::size_t> subtree_range(std::size_t c, std::size_t num_leaves) {
  const auto d = depth_of(c);
  const auto width = num_leaves >> d;
  const auto lo = (c - (std::size_t{1} << d)) * width;
  return {lo, lo + width};
}

std::size_t full_link_dim(std::size_t c, std::size_t num_leaves, std::size_t max_bond) {
  if (c >= num_leaves) return 2;
  const auto [lo, hi] = subtree_range(c, num_leaves);
  const auto below = hi - lo;
  if (below >= 30) return max_bond;
  return std::min(max_bond, std::size_t{1} << below);
}

void check_leaves(std::size_t num_leaves) {
  if (num_leaves < 4 || !is_power_of_two(num_leaves)) {
    throw std::invalid_argument("TTN requires a power-of-two number of sites >= 4, got " +
                                std::to_string(num_leaves));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// TtnState

std::size_t TtnState::num_levels() const {
  return static_cast<std::size_t>(std::countr_zero(num_leaves_));
}

const DenseTensor& TtnState::node(TtnNode h) const {
  if (h < 2 || h >= num_leaves_) throw std::out_of_range("TtnState: node out of range");
  return nodes_[h];
}

DenseTensor& TtnState::node(TtnNode h) {
  if (h < 2 || h >= num_leaves_) throw std::out_of_range("TtnState: node out of range");
  return nodes_[h];
}

std::size_t TtnState::link_dim(std::size_t c) const {
  if (c >= num_leaves_) return 2;
  return node(c).dim(2);
}

std::size_t TtnState::max_bond_dim() const {
  std::size_t m = 1;
  for (TtnNode h = 2; h < num_leaves_; ++h) m = std::max(m, nodes_[h].dim(2));
  return m;
}

int TtnState::leg_toward(TtnNode h, TtnNode q) {
  if (q == 2 * h) return 0;
  if (q == 2 * h + 1) return 1;
  return 2;
}

TtnNode TtnState::parent_of(TtnNode h) const { return h >= 4 ? h / 2 : 5 - h; }

std::vector<TtnNode> TtnState::path(TtnNode from, TtnNode to) const {
  auto top = [](TtnNode h) { return h >> (depth_of(h) - 1); };
  std::vector<TtnNode> head{from};
  std::vector<TtnNode> tail{to};
  if (top(from) == top(to)) {
    TtnNode a = from, b = to;
    while (a != b) {
      if (a > b) {
        a /= 2;
        head.push_back(a);
      } else {
        b /= 2;
        tail.push_back(b);
      }
    }
    tail.pop_back();  // the common ancestor is already in head
  } else {
    for (TtnNode a = from; a > 3;) head.push_back(a /= 2);
    for (TtnNode b = to; b > 3;) tail.push_back(b /= 2);
  }
  head.insert(head.end(), tail.rbegin(), tail.rend());
  return head;
}

void TtnState::step_center(TtnNode q) {
  const TtnNode p = center_;
  const int leg = leg_toward(p, q);
  const auto qr = thin_qr(matricize(nodes_[p], leg));
  nodes_[p] = unmatricize(qr.q, leg, shape3(nodes_[p]));
  nodes_[q] = apply_leg(nodes_[q], leg_toward(q, p), qr.r);
  center_ = q;
}

void TtnState::move_center(TtnNode target) {
  if (target < 2 || target >= num_leaves_) throw std::out_of_range("move_center: bad node");
  const auto p = path(center_, target);
  for (std::size_t i = 1; i < p.size(); ++i) step_center(p[i]);
}

void TtnState::normalize() {
  auto& c = nodes_[center_];
  const double nrm = std::sqrt(c.squared_norm());
  if (!(nrm > 0.0) || !std::isfinite(nrm)) throw std::runtime_error("TtnState: zero or non-finite norm");
  for (auto& v : c.data()) v /= nrm;
}

double TtnState::norm_squared() const {
  // Bottom-up overlap matrices of each subtree.
  std::vector<Matrix> g(2 * num_leaves_);
  for (std::size_t c = num_leaves_; c < 2 * num_leaves_; ++c) g[c] = Matrix::Identity(2, 2);
  for (std::size_t h = num_leaves_ - 1; h >= 2; --h) {
    const auto& t = nodes_[h];
    const auto phi = apply_leg(apply_leg(t, 0, g[2 * h]), 1, g[2 * h + 1]);
    g[h] = gram(t, phi, 2);
  }
  return g[2].cwiseProduct(g[3]).sum();
}

double TtnState::isometry_error() const {
  double err = 0.0;
  for (TtnNode h = 2; h < num_leaves_; ++h) {
    if (h == center_) continue;
    const auto p = path(h, center_);
    const int leg = leg_toward(h, p[1]);
    const Matrix g = gram(nodes_[h], nodes_[h], leg);
    err = std::max(err, (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff());
  }
  return err;
}

Vector TtnState::to_statevector() const {
  if (num_leaves_ > kMaxEdSites) throw std::invalid_argument("to_statevector: too many sites");
  // amp[c]: (2^{sites below c} x link_dim(c)).
  std::vector<Matrix> amp(2 * num_leaves_);
  for (std::size_t c = num_leaves_; c < 2 * num_leaves_; ++c) amp[c] = Matrix::Identity(2, 2);
  for (std::size_t h = num_leaves_ - 1; h >= 2; --h) {
    const auto& t = nodes_[h];
    const auto& a = amp[2 * h];
    const auto& b = amp[2 * h + 1];
    const auto d0 = idim(t, 0), d1 = idim(t, 1), d2 = idim(t, 2);
    Matrix out(a.rows() * b.rows(), d2);
    Matrix tp(d0, d1);
    for (Eigen::Index p = 0; p < d2; ++p) {
      for (Eigen::Index i = 0; i < d0; ++i) {
        for (Eigen::Index j = 0; j < d1; ++j) tp(i, j) = t.data()[static_cast<std::size_t>((i * d1 + j) * d2 + p)];
      }
      const Matrix block = a * tp * b.transpose();
      out.col(p) = Eigen::Map<const Vector>(block.data(), block.size());
    }
    amp[h] = std::move(out);
  }
  const Matrix psi = amp[2] * amp[3].transpose();
  return Eigen::Map<const Vector>(psi.data(), psi.size());
}

namespace {

// Rebuilds the canonical form with center at node 2.
void canonicalize(std::vector<DenseTensor>& nodes, std::size_t num_leaves) {
  for (std::size_t h = num_leaves - 1; h >= 3; --h) {
    const auto qr = thin_qr(matricize(nodes[h], 2));
    nodes[h] = unmatricize(qr.q, 2, shape3(nodes[h]));
    const std::size_t parent = h >= 4 ? h / 2 : 2;
    const int leg = h >= 4 ? static_cast<int>(h % 2) : 2;
    nodes[parent] = apply_leg(nodes[parent], leg, qr.r);
  }
}

}  // namespace

TtnState TtnState::random(std::size_t num_leaves, std::size_t max_bond, std::uint64_t seed) {
  check_leaves(num_leaves);
  if (max_bond < 1) throw std::invalid_argument("TtnState::random: max_bond must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  TtnState s;
  s.num_leaves_ = num_leaves;
  s.nodes_.resize(num_leaves);
  for (std::size_t h = num_leaves - 1; h >= 2; --h) {
    const auto d0 = full_link_dim(2 * h, num_leaves, max_bond);
    const auto d1 = full_link_dim(2 * h + 1, num_leaves, max_bond);
    const auto dp = full_link_dim(h, num_leaves, max_bond);
    Matrix m(static_cast<Eigen::Index>(d0 * d1), static_cast<Eigen::Index>(dp));
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = normal(rng);
    const Matrix q = h == 2 ? Matrix(m / m.norm()) : thin_qr(m).q;
    s.nodes_[h] = unmatricize(q, 2, {d0, d1, dp});
  }
  s.center_ = 2;
  return s;
}

TtnState TtnState::product(std::span<const Eigen::Vector2d> local) {
  check_leaves(local.size());
  const auto n = local.size();
  TtnState s;
  s.num_leaves_ = n;
  s.nodes_.resize(n);
  for (std::size_t h = n - 1; h >= 2; --h) {
    if (2 * h >= n) {
      const auto& a = local[2 * h - n];
      const auto& b = local[2 * h + 1 - n];
      DenseTensor t({2, 2, 1});
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) t({i, j, 0}) = a(static_cast<Eigen::Index>(i)) * b(static_cast<Eigen::Index>(j));
      }
      s.nodes_[h] = std::move(t);
    } else {
      s.nodes_[h] = DenseTensor({1, 1, 1}, {1.0});
    }
  }
  canonicalize(s.nodes_, n);
  s.center_ = 2;
  s.normalize();
  return s;
}

TtnState TtnState::all_up(std::size_t num_leaves) {
  return product(std::vector<Eigen::Vector2d>(num_leaves, Eigen::Vector2d(1.0, 0.0)));
}

TtnState TtnState::from_nodes(std::size_t num_leaves, std::vector<DenseTensor> nodes,
                              TtnNode center) {
  check_leaves(num_leaves);
  if (nodes.size() != num_leaves - 2) {
    throw std::invalid_argument("TtnState::from_nodes: expected " + std::to_string(num_leaves - 2) +
                                " node tensors");
  }
  TtnState s;
  s.num_leaves_ = num_leaves;
  s.nodes_.resize(num_leaves);
  for (std::size_t h = 2; h < num_leaves; ++h) {
    auto& t = nodes[h - 2];
    if (t.rank() != 3) throw std::invalid_argument("TtnState::from_nodes: node tensors are 3-leg");
    s.nodes_[h] = std::move(t);
  }
  for (std::size_t h = 2; h < num_leaves; ++h) {
    const auto& t = s.nodes_[h];
    if (t.dim(0) != s.link_dim(2 * h) || t.dim(1) != s.link_dim(2 * h + 1)) {
      throw std::invalid_argument("TtnState::from_nodes: link dimension mismatch at node " +
                                  std::to_string(h));
    }
  }
  if (s.nodes_[2].dim(2) != s.nodes_[3].dim(2)) {
    throw std::invalid_argument("TtnState::from_nodes: top link dimension mismatch");
  }
  canonicalize(s.nodes_, num_leaves);
  s.center_ = 2;
  s.move_center(center);
  return s;
}

// ---------------------------------------------------------------------------
// Environments

namespace {

struct Region {
  std::size_t lo = 0;
  std::size_t hi = 0;
  bool complement = false;

  bool contains(std::size_t mu) const { return (mu >= lo && mu < hi) != complement; }
};

// Renormalized operators of one side of a link, in the link's basis.
struct BlockEnv {
  Matrix h;
  std::vector<ChainIndex> sites;  // sites with a partner outside the block, sorted
  std::vector<Matrix> x;          // renormalized X, parallel to `sites`

  const Matrix* find(ChainIndex mu) const {
    const auto it = std::lower_bound(sites.begin(), sites.end(), mu);
    if (it == sites.end() || *it != mu) return nullptr;
    return &x[static_cast<std::size_t>(it - sites.begin())];
  }
};

struct Partner {
  ChainIndex site;
  double weight;
};

class TreeEnvironments {
 public:
  TreeEnvironments(const TermList1D& terms, std::size_t num_leaves)
      : terms_(terms), n_(num_leaves), partners_(num_leaves), up_(2 * num_leaves), down_(num_leaves) {
    for (const auto& t : terms.pairs) {
      partners_[t.mu].push_back({t.nu, t.weight});
      partners_[t.nu].push_back({t.mu, t.weight});
    }
    for (std::size_t mu = 0; mu < n_; ++mu) {
      auto& e = up_[n_ + mu];
      e.h = terms.field * pauli::z();
      if (!partners_[mu].empty()) {
        e.sites = {mu};
        e.x = {pauli::x()};
      }
    }
  }

  Region up_region(std::size_t c) const {
    const auto [lo, hi] = subtree_range(c, n_);
    return {lo, hi, false};
  }

  // Environment and region seen by node h across `leg`.
  std::pair<const BlockEnv*, Region> incoming(TtnNode h, int leg) const {
    if (leg < 2) {
      const auto c = 2 * h + static_cast<std::size_t>(leg);
      return {&up_[c], up_region(c)};
    }
    if (h >= 4) {
      auto r = up_region(h);
      r.complement = true;
      return {&down_[h], r};
    }
    return {&up_[5 - h], up_region(5 - h)};
  }

  // Environment slot that node h produces across `leg`.
  BlockEnv& outgoing(TtnNode h, int leg) {
    if (leg < 2) return down_[2 * h + static_cast<std::size_t>(leg)];
    return up_[h];
  }

  // Computes the block environment of node tensor t (isometric toward
  // out_leg) from the environments on its other two legs.
  void update(const DenseTensor& t, TtnNode h, int out_leg) {
    std::array<int, 2> in{};
    for (int l = 0, k = 0; l < 3; ++l) {
      if (l != out_leg) in[static_cast<std::size_t>(k++)] = l;
    }
    const auto [ea, ra] = incoming(h, in[0]);
    const auto [eb, rb] = incoming(h, in[1]);

    DenseTensor phi = apply_leg(t, in[0], ea->h);
    add_to(phi, apply_leg(t, in[1], eb->h));
    for (std::size_t i = 0; i < ea->sites.size(); ++i) {
      const auto y = coupled_operator(ea->sites[i], *eb, rb);
      if (y.size() == 0) continue;
      add_to(phi, apply_leg(apply_leg(t, in[0], ea->x[i]), in[1], y));
    }

    BlockEnv out;
    Matrix hm = gram(t, phi, out_leg);
    out.h = 0.5 * (hm + hm.transpose());

    // Open sites of the union block, merged in sorted order.
    Region merged = incoming(h, out_leg).second;
    merged.complement = !merged.complement;
    std::vector<std::pair<ChainIndex, int>> candidates;
    for (auto mu : ea->sites) candidates.push_back({mu, 0});
    for (auto mu : eb->sites) candidates.push_back({mu, 1});
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [mu, side] : candidates) {
      const bool open = std::any_of(partners_[mu].begin(), partners_[mu].end(),
                                    [&](const Partner& p) { return !merged.contains(p.site); });
      if (!open) continue;
      const auto& env = side == 0 ? *ea : *eb;
      const int leg = in[static_cast<std::size_t>(side)];
      out.sites.push_back(mu);
      out.x.push_back(gram(t, apply_leg(t, leg, *env.find(mu)), out_leg));
    }
    outgoing(h, out_leg) = std::move(out);
  }

  // sum_nu w X_nu over partners nu of mu inside region rb, in env eb's basis.
  Matrix coupled_operator(ChainIndex mu, const BlockEnv& eb, const Region& rb) const {
    Matrix y;
    for (const auto& p : partners_[mu]) {
      if (!rb.contains(p.site)) continue;
      const Matrix* xb = eb.find(p.site);
      if (xb == nullptr) throw std::logic_error("TTN environment is missing an open site");
      if (y.size() == 0) {
        y = p.weight * *xb;
      } else {
        y += p.weight * *xb;
      }
    }
    return y;
  }

  const TermList1D& terms() const { return terms_; }

 private:
  const TermList1D& terms_;
  std::size_t n_;
  std::vector<std::vector<Partner>> partners_;
  std::vector<BlockEnv> up_;    // indexed by heap position c (node or leaf)
  std::vector<BlockEnv> down_;  // indexed by node c >= 4
};

// Effective Hamiltonian of the center node.
class NodeOperator {
 public:
  NodeOperator(const TreeEnvironments& envs, TtnNode h, std::array<std::size_t, 3> shape)
      : shape_(shape) {
    std::array<std::pair<const BlockEnv*, Region>, 3> in{envs.incoming(h, 0), envs.incoming(h, 1),
                                                         envs.incoming(h, 2)};
    for (int l = 0; l < 3; ++l) blocks_[static_cast<std::size_t>(l)] = &in[static_cast<std::size_t>(l)].first->h;
    for (int a = 0; a < 3; ++a) {
      for (int b = a + 1; b < 3; ++b) {
        const auto& ea = *in[static_cast<std::size_t>(a)].first;
        const auto& eb = *in[static_cast<std::size_t>(b)].first;
        const auto& rb = in[static_cast<std::size_t>(b)].second;
        for (std::size_t i = 0; i < ea.sites.size(); ++i) {
          auto y = envs.coupled_operator(ea.sites[i], eb, rb);
          if (y.size() == 0) continue;
          cross_.push_back({a, &ea.x[i], b, std::move(y)});
        }
      }
    }
  }

  DenseTensor apply(const DenseTensor& t) const {
    DenseTensor out = apply_leg(t, 0, *blocks_[0]);
    add_to(out, apply_leg(t, 1, *blocks_[1]));
    add_to(out, apply_leg(t, 2, *blocks_[2]));
    for (const auto& c : cross_) add_to(out, apply_leg(apply_leg(t, c.leg_a, *c.xa), c.leg_b, c.yb));
    return out;
  }

  void apply(const Vector& in, Vector& out) const {
    DenseTensor t({shape_[0], shape_[1], shape_[2]},
                  std::vector<double>(in.data(), in.data() + in.size()));
    const auto r = apply(t);
    out = Eigen::Map<const Vector>(r.data().data(), static_cast<Eigen::Index>(r.size()));
  }

 private:
  struct Cross {
    int leg_a;
    const Matrix* xa;
    int leg_b;
    Matrix yb;
  };
  std::array<std::size_t, 3> shape_;
  std::array<const Matrix*, 3> blocks_{};
  std::vector<Cross> cross_;
};

// Builds every environment pointing toward node 2 (state center must be 2).
void build_environments(TreeEnvironments& envs, const TtnState& state) {
  for (std::size_t c = state.num_leaves() - 1; c >= 3; --c) envs.update(state.node(c), c, 2);
}

// Moves the center one link and refreshes the environment left behind.
void step(TreeEnvironments& envs, TtnState& state, TtnNode to) {
  const TtnNode from = state.center();
  state.move_center(to);
  envs.update(state.node(from), from, TtnState::leg_toward(from, to));
}

void preorder(TtnNode h, std::size_t num_leaves, std::vector<TtnNode>& out) {
  if (h >= num_leaves) return;
  out.push_back(h);
  preorder(2 * h, num_leaves, out);
  preorder(2 * h + 1, num_leaves, out);
}

void check_terms(const TermList1D& terms) { check_leaves(terms.num_sites); }

}  // namespace

void validate(const TtnConfig& config) {
  if (config.max_bond < 1) throw std::invalid_argument("TTN: max_bond must be >= 1");
  if (config.num_sweeps < 1) throw std::invalid_argument("TTN: num_sweeps must be >= 1");
  if (!(config.energy_tol > 0.0) || !(config.lanczos_tol > 0.0)) {
    throw std::invalid_argument("TTN: tolerances must be positive");
  }
}

TtnResult ttn_ground_state(const TermList1D& terms, const TtnConfig& config,
                           std::optional<TtnState> initial) {
  validate(config);
  check_terms(terms);
  const auto n = terms.num_sites;
  TtnState state = initial ? std::move(*initial) : TtnState::random(n, config.max_bond, config.seed);
  if (state.num_leaves() != n) throw std::invalid_argument("TTN: initial state has wrong size");
  state.move_center(2);
  state.normalize();

  TreeEnvironments envs(terms, n);
  build_environments(envs, state);

  std::vector<TtnNode> order;
  preorder(2, n, order);
  preorder(3, n, order);

  LanczosOptions lopts;
  lopts.tol = config.lanczos_tol;
  lopts.max_iter = config.lanczos_max_iter;
  lopts.krylov_dim = 32;

  TtnResult result;
  double eigenvalue = 0.0;
  double previous = 0.0;
  std::size_t solves = 0;
  for (int sweep = 0; sweep < config.num_sweeps; ++sweep) {
    const auto start = std::chrono::steady_clock::now();
    for (const auto h : order) {
      const auto route = state.path(state.center(), h);
      for (std::size_t i = 1; i < route.size(); ++i) step(envs, state, route[i]);

      auto& t = state.node(h);
      const NodeOperator op(envs, h, shape3(t));
      const Vector guess = Eigen::Map<const Vector>(t.data().data(), static_cast<Eigen::Index>(t.size()));
      lopts.seed = config.seed + 7919 * (solves++);
      const auto eig = lanczos_smallest(
          [&op](const Vector& in, Vector& out) { op.apply(in, out); }, guess, lopts);
      if (!std::isfinite(eig.eigenvalue) || !eig.eigenvector.allFinite()) {
        throw std::runtime_error("TTN: non-finite local eigenpair at sweep " +
                                 std::to_string(sweep) + ", node " + std::to_string(h));
      }
      std::copy(eig.eigenvector.data(), eig.eigenvector.data() + eig.eigenvector.size(),
                t.data().begin());
      eigenvalue = eig.eigenvalue;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    result.trace.energies.push_back(eigenvalue);
    result.trace.max_truncated_weight.push_back(0.0);
    result.trace.wall_seconds.push_back(elapsed.count());
    if (sweep > 0 && std::abs(eigenvalue - previous) < config.energy_tol * static_cast<double>(n)) {
      result.trace.converged = true;
      break;
    }
    previous = eigenvalue;
  }

  result.last_eigenvalue = eigenvalue;
  result.energy = ttn_energy(state, terms);
  result.state = std::move(state);
  return result;
}

double ttn_energy(const TtnState& state, const TermList1D& terms) {
  check_terms(terms);
  if (state.num_leaves() != terms.num_sites) throw std::invalid_argument("ttn_energy: size mismatch");
  TtnState s = state;
  s.move_center(2);
  TreeEnvironments envs(terms, s.num_leaves());
  build_environments(envs, s);
  const auto& t = s.node(2);
  const NodeOperator op(envs, 2, shape3(t));
  return dot(t, op.apply(t)) / dot(t, t);
}

double ttn_local_expectation(const TtnState& state, std::size_t leaf, PauliAxis axis) {
  if (leaf >= state.num_leaves()) throw std::out_of_range("ttn_local_expectation: bad leaf");
  TtnState s = state;
  const TtnNode parent = (state.num_leaves() + leaf) / 2;
  s.move_center(parent);
  const auto& t = s.node(parent);
  const Matrix op = axis == PauliAxis::z ? pauli::z() : pauli::x();
  return dot(t, apply_leg(t, static_cast<int>(leaf % 2), op)) / dot(t, t);
}

double ttn_weighted_x_square(const TtnState& state, std::span<const double> weights) {
  const auto n = state.num_leaves();
  if (weights.size() != n) throw std::invalid_argument("ttn_weighted_x_square: size mismatch");
  TtnState s = state;
  s.move_center(2);
  // Per subtree: S = sum w X, Q = S^2, renormalized upward.
  std::vector<Matrix> lin(2 * n), sq(2 * n);
  for (std::size_t mu = 0; mu < n; ++mu) {
    lin[n + mu] = weights[mu] * pauli::x();
    sq[n + mu] = weights[mu] * weights[mu] * pauli::identity();
  }
  for (std::size_t c = n - 1; c >= 3; --c) {
    const auto& t = s.node(c);
    const auto sa = apply_leg(t, 0, lin[2 * c]);
    DenseTensor slin = sa;
    add_to(slin, apply_leg(t, 1, lin[2 * c + 1]));
    DenseTensor ssq = apply_leg(t, 0, sq[2 * c]);
    add_to(ssq, apply_leg(t, 1, sq[2 * c + 1]));
    auto cross = apply_leg(sa, 1, lin[2 * c + 1]);
    for (auto& v : cross.data()) v *= 2.0;
    add_to(ssq, cross);
    lin[c] = gram(t, slin, 2);
    sq[c] = gram(t, ssq, 2);
  }
  const auto& t = s.node(2);
  const std::array<const Matrix*, 3> l{&lin[4], &lin[5], &lin[3]};
  const std::array<const Matrix*, 3> q{&sq[4], &sq[5], &sq[3]};
  DenseTensor acc = apply_leg(t, 0, *q[0]);
  add_to(acc, apply_leg(t, 1, *q[1]));
  add_to(acc, apply_leg(t, 2, *q[2]));
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      auto term = apply_leg(apply_leg(t, a, *l[static_cast<std::size_t>(a)]), b, *l[static_cast<std::size_t>(b)]);
      for (auto& v : term.data()) v *= 2.0;
      add_to(acc, term);
    }
  }
  return dot(t, acc) / dot(t, t);
}

}  // namespace sfctn

#include "sfctn/spacefill.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace sfctn {

namespace {

// Quadrant rotation of the standard bit-interleaving Hilbert transform.
void rotate(std::uint32_t s, std::uint32_t& x, std::uint32_t& y, std::uint32_t rx,
            std::uint32_t ry) {
  if (ry == 0) {
    if (rx == 1) {
      x = s - 1 - x;
      y = s - 1 - y;
    }
    std::swap(x, y);
  }
}

}  // namespace

std::string_view to_string(CurveKind kind) {
  return kind == CurveKind::hilbert ? "hilbert" : "snake";
}

CurveKind parse_curve_kind(std::string_view text) {
  if (text == "hilbert") return CurveKind::hilbert;
  if (text == "snake") return CurveKind::snake;
  throw std::invalid_argument("unknown mapping '" + std::string(text) +
                              "' (expected hilbert or snake)");
}

std::uint64_t hilbert_index(std::uint32_t n, std::uint32_t x, std::uint32_t y) {
  std::uint64_t d = 0;
  for (std::uint32_t s = n / 2; s > 0; s /= 2) {
    const std::uint32_t rx = (x & s) ? 1 : 0;
    const std::uint32_t ry = (y & s) ? 1 : 0;
    d += std::uint64_t{s} * s * ((3 * rx) ^ ry);
    rotate(n, x, y, rx, ry);
  }
  return d;
}

LatticeCoord hilbert_coord(std::uint32_t n, std::uint64_t index) {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint64_t t = index;
  for (std::uint32_t s = 1; s < n; s *= 2) {
    const auto rx = static_cast<std::uint32_t>(1 & (t / 2));
    const auto ry = static_cast<std::uint32_t>(1 & (t ^ rx));
    rotate(s, x, y, rx, ry);
    x += s * rx;
    y += s * ry;
    t /= 4;
  }
  return {static_cast<int>(x), static_cast<int>(y)};
}

SiteMapping::SiteMapping(int n, CurveKind kind, std::vector<LatticeCoord> order)
    : n_(n), kind_(kind), forward_(order.size()), inverse_(std::move(order)) {
  for (ChainIndex mu = 0; mu < inverse_.size(); ++mu) {
    const auto c = inverse_[mu];
    forward_[static_cast<std::size_t>(c.y) * n_ + c.x] = mu;
  }
}

SiteMapping SiteMapping::build_hilbert(int n) {
  if (n < 2 || !is_power_of_two(static_cast<std::size_t>(n))) {
    throw std::invalid_argument("hilbert mapping requires n = 2^k with k >= 1, got n = " +
                                std::to_string(n));
  }
  const auto un = static_cast<std::uint32_t>(n);
  std::vector<LatticeCoord> order(static_cast<std::size_t>(n) * n);
  for (std::size_t d = 0; d < order.size(); ++d) order[d] = hilbert_coord(un, d);
  return SiteMapping(n, CurveKind::hilbert, std::move(order));
}

SiteMapping SiteMapping::build_snake(int n) {
  if (n < 1) throw std::invalid_argument("snake mapping requires n >= 1");
  std::vector<LatticeCoord> order;
  order.reserve(static_cast<std::size_t>(n) * n);
  for (int y = 0; y < n; ++y) {
    for (int i = 0; i < n; ++i) order.push_back({y % 2 == 0 ? i : n - 1 - i, y});
  }
  return SiteMapping(n, CurveKind::snake, std::move(order));
}

SiteMapping SiteMapping::build(CurveKind kind, int n) {
  return kind == CurveKind::hilbert ? build_hilbert(n) : build_snake(n);
}

ChainIndex SiteMapping::index(LatticeCoord c) const {
  if (c.x < 0 || c.y < 0 || c.x >= n_ || c.y >= n_) {
    throw std::out_of_range("lattice coordinate outside the n x n lattice");
  }
  return forward_[static_cast<std::size_t>(c.y) * n_ + c.x];
}

LatticeCoord SiteMapping::coord(ChainIndex mu) const {
  if (mu >= inverse_.size()) throw std::out_of_range("chain index out of range");
  return inverse_[mu];
}

std::size_t chain_distance(ChainIndex a, ChainIndex b) { return a > b ? a - b : b - a; }

std::size_t tree_distance(ChainIndex a, ChainIndex b, std::size_t num_leaves) {
  if (!is_power_of_two(num_leaves) || num_leaves < 2) {
    throw std::invalid_argument("tree_distance requires a power-of-two leaf count >= 2");
  }
  if (a >= num_leaves || b >= num_leaves) {
    throw std::out_of_range("tree_distance: leaf index out of range");
  }
  if (a == b) return 0;
  const auto levels = static_cast<std::size_t>(std::countr_zero(num_leaves));
  // Height of the lowest common ancestor above the leaves.
  const auto height = static_cast<std::size_t>(std::bit_width(a ^ b));
  if (height == levels) return 2 * (levels - 1) + 1;
  return 2 * height;
}

void write_mapping_text(std::ostream& os, const SiteMapping& mapping) {
  const auto order = mapping.order();
  for (ChainIndex mu = 0; mu < order.size(); ++mu) {
    os << mu << ' ' << order[mu].x << ' ' << order[mu].y << '\n';
  }
}

std::string mapping_to_json(const SiteMapping& mapping) {
  nlohmann::ordered_json j;
  j["n"] = mapping.n();
  j["kind"] = std::string(to_string(mapping.kind()));
  auto sites = nlohmann::json::array();
  const auto order = mapping.order();
  for (ChainIndex mu = 0; mu < order.size(); ++mu) {
    sites.push_back({mu, order[mu].x, order[mu].y});
  }
  j["sites"] = std::move(sites);
  return j.dump();
}

SiteMapping mapping_from_json(std::string_view text) {
  const auto j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const auto kind = parse_curve_kind(j.at("kind").get<std::string>());
  auto mapping = SiteMapping::build(kind, n);
  const auto& sites = j.at("sites");
  if (sites.size() != mapping.num_sites()) {
    throw std::invalid_argument("mapping JSON: wrong number of sites");
  }
  for (const auto& rec : sites) {
    const auto mu = rec.at(0).get<ChainIndex>();
    const LatticeCoord c{rec.at(1).get<int>(), rec.at(2).get<int>()};
    if (mapping.coord(mu) != c) {
      throw std::invalid_argument("mapping JSON disagrees with the " +
                                  std::string(to_string(kind)) + " curve at mu = " +
                                  std::to_string(mu));
    }
  }
  return mapping;
}

}  // namespace sfctn

#pragma once

// Space-filling curve orderings of an n x n lattice and the distance
// functions of the two network geometries (chain and binary tree).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sfctn {

/// Lattice site. x is the column, y the row; (0, 0) is the bottom-left corner.
struct LatticeCoord {
  int x = 0;
  int y = 0;

  friend constexpr auto operator<=>(const LatticeCoord&, const LatticeCoord&) = default;
};

/// Position along the 1D chain, in [0, n*n).
using ChainIndex = std::size_t;

enum class CurveKind { hilbert, snake };

std::string_view to_string(CurveKind kind);
CurveKind parse_curve_kind(std::string_view text);

constexpr bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

/// Hilbert index of (x, y) on an n x n lattice, n a power of two. The curve
/// starts at (0, 0) and ends at (n - 1, 0); the 2 x 2 cell is visited
/// BL, TL, TR, BR.
std::uint64_t hilbert_index(std::uint32_t n, std::uint32_t x, std::uint32_t y);

/// Inverse of hilbert_index.
LatticeCoord hilbert_coord(std::uint32_t n, std::uint64_t index);

/// Immutable bijection between lattice coordinates and chain indices.
class SiteMapping {
 public:
  /// Level-k Hilbert curve for n = 2^k, k >= 1.
  static SiteMapping build_hilbert(int n);
  /// Boustrophedon rows, bottom to top; even rows left-to-right.
  static SiteMapping build_snake(int n);
  static SiteMapping build(CurveKind kind, int n);

  int n() const { return n_; }
  CurveKind kind() const { return kind_; }
  std::size_t num_sites() const { return inverse_.size(); }

  /// Forward map M: (x, y) -> mu.
  ChainIndex index(LatticeCoord c) const;
  /// Inverse map: mu -> (x, y).
  LatticeCoord coord(ChainIndex mu) const;

  /// Sites in chain order.
  std::span<const LatticeCoord> order() const { return inverse_; }

 private:
  SiteMapping(int n, CurveKind kind, std::vector<LatticeCoord> order);

  int n_;
  CurveKind kind_;
  std::vector<ChainIndex> forward_;  // indexed by y * n + x
  std::vector<LatticeCoord> inverse_;
};

/// d_MPS: number of links between two chain positions.
std::size_t chain_distance(ChainIndex a, ChainIndex b);

/// d_TTN: number of links between leaves a and b of a binary tree over
/// num_leaves = 2^L leaves whose two top tensors share a single link.
std::size_t tree_distance(ChainIndex a, ChainIndex b, std::size_t num_leaves);

/// One "mu x y" record per line, chain order.
void write_mapping_text(std::ostream& os, const SiteMapping& mapping);
std::string mapping_to_json(const SiteMapping& mapping);
SiteMapping mapping_from_json(std::string_view text);

}  // namespace sfctn

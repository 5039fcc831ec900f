#pragma once

// The pinwheel inflate-and-subdivide rule and the nested supertiles around the seed.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pinwheel/geometry.hpp"

namespace pinwheel {

/// Thrown when a request exceeds the tile budget (PINWHEEL_MAX_TILES).
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown when the hard-coded rule fails its exact-cover self-check.
struct ConfigurationError : std::logic_error {
  using std::logic_error::logic_error;
};

struct RulePiece {
  Chirality chirality;
  RigidMotion motion;  // places the reference prototile of `chirality`
};

/// Inflation z -> (2-i)(z-1) maps the seed onto the 1-supertile (-2,1),(2,-1),(3,1);
/// pieces subdivide the inflated reference prototile of each chirality.
struct SubdivisionRule {
  ExactScalar factor;       // 2 - i
  ExactScalar translation;  // -(2 - i)
  std::array<RulePiece, 5> minus_pieces;
  std::array<RulePiece, 5> plus_pieces;

  const std::array<RulePiece, 5>& pieces(Chirality c) const {
    return c == Chirality::Minus ? minus_pieces : plus_pieces;
  }
  ExactScalar inflate_point(const ExactScalar& z) const { return factor * z + translation; }
  /// phi∘g∘phi^-1, a rigid motion because the inflation factor commutes with rotations.
  RigidMotion conjugate_by_inflation(const RigidMotion& g) const;
};

/// The canonical rule; self-checked (exact cover of both inflated prototiles) on first use.
const SubdivisionRule& subdivision_rule();

/// Result of checking that a tile list exactly covers a triangle.
struct CoverCheck {
  bool count_ok = false;
  bool area_ok = false;
  bool disjoint_ok = false;
  bool contained_ok = false;
  std::string witness;  // empty on success
  bool ok() const { return count_ok && area_ok && disjoint_ok && contained_ok; }
};

/// Exact-cover predicate: `tiles` pairwise interior-disjoint, each inside `region`,
/// with total area equal to the region's area.
CoverCheck check_cover(std::span<const Tile> tiles, const TriangleVertices& region,
                       std::size_t expected_count);

/// The 5 children of t, in rule order.
std::array<Tile, 5> inflate(const Tile& t);

/// Default cap on tiles per supertile; overridden by PINWHEEL_MAX_TILES.
std::uint64_t max_tiles();
inline constexpr std::uint64_t kDefaultMaxTiles = 390625;  // 5^8

struct Supertile {
  int level = 0;
  std::vector<Tile> tiles;
  /// Region covered: the n-fold inflation of the seed.
  TriangleVertices outline;

  std::size_t size() const { return tiles.size(); }
};

/// Level-n supertile. Tile i of level n is child (i % 5) of tile (i / 5) of level n-1
/// after inflation, so tiles [0, 5^(n-1)) reproduce supertile(n-1).
Supertile supertile(int n, std::uint64_t tile_cap = max_tiles());

struct ParentCell {
  std::size_t sub_supertile;  // index of the level-1 sub-supertile (tile index at level n-1)
  int position;               // 0..4 within it
};
ParentCell parent_of(const Supertile& s, std::size_t tile_index);
/// Positions from the root down to the tile (length = level).
std::vector<int> generation_path(const Supertile& s, std::size_t tile_index);

}  // namespace pinwheel

#pragma once

// Spatial kernels over large tile sets.
//
// TileIndex rescales all vertex coordinates of a tile set to a common
// denominator so that every predicate runs on __int128 exactly, and buckets the
// tiles on a square grid. The adjacency kernel is OpenMP-parallel over tiles.
// adjacency_reference() is the serial brute-force version on Q(i,sqrt5)
// arithmetic; it is kept for tests and the benchmark.

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "pinwheel/geometry.hpp"

namespace pinwheel {

using i128 = __int128;
using IntPoint = Vec2<i128>;
using IntTriangle = Triangle<i128>;

enum class CollarConvention { Closed, Edge };

const char* to_string(CollarConvention c);
CollarConvention collar_convention_from_string(const std::string& s);

/// Compressed adjacency lists.
struct Graph {
  std::vector<std::uint32_t> offsets{0};
  std::vector<std::uint32_t> targets;

  std::size_t size() const { return offsets.size() - 1; }
  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  friend bool operator==(const Graph&, const Graph&) = default;
};

/// Thrown when coordinates leave Q(i) or overflow the integer frame.
struct FrameUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TileIndex {
 public:
  /// extra_points are folded into the common denominator so they can be mapped later.
  explicit TileIndex(std::span<const Tile> tiles, std::span<const ExactScalar> extra_points = {});

  std::size_t size() const { return tris_.size(); }
  const BigInt& scale() const { return scale_; }
  IntPoint map(const ExactScalar& z) const;
  /// Vertices in (right-angle, short-leg end, long-leg end) order.
  const std::array<IntPoint, 3>& vertices(std::size_t i) const { return verts_[i]; }
  const IntTriangle& triangle(std::size_t i) const { return tris_[i]; }
  Chirality chirality(std::size_t i) const { return chir_[i]; }

  Graph adjacency(CollarConvention conv) const;
  std::vector<std::uint32_t> tiles_containing(const IntPoint& p) const;
  std::optional<std::uint32_t> find(Chirality c, const IntPoint& right, const IntPoint& long_end) const;
  /// Tiles touching the boundary of the union of all tiles: those containing a
  /// vertex around which the tile angles do not add up to a full turn.
  std::vector<bool> touches_outline() const;
  /// Index pairs with overlapping interiors among grid neighbours; empty on a valid tiling.
  std::optional<std::pair<std::uint32_t, std::uint32_t>> first_overlap() const;

 private:
  std::uint64_t cell_key(i128 cx, i128 cy) const;
  std::vector<std::uint32_t> candidates(std::size_t i) const;

  BigInt scale_;
  i128 cell_ = 1;
  std::vector<std::array<IntPoint, 3>> verts_;
  std::vector<IntTriangle> tris_;
  std::vector<Chirality> chir_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> by_right_vertex_;
};

/// Serial exact brute force over all pairs. Reference for Graph adjacency.
Graph adjacency_reference(std::span<const Tile> tiles, CollarConvention conv);

/// Adjacency for any tile set: integer frame when available, otherwise the reference.
Graph adjacency(std::span<const Tile> tiles, CollarConvention conv);

/// Tiles reachable from seeds within n adjacency steps, sorted. layer_of, when given,
/// receives the step at which each returned tile was reached.
std::vector<std::uint32_t> grow(const Graph& g, std::span<const std::uint32_t> seeds, int n,
                                std::vector<int>* layer_of = nullptr);

}  // namespace pinwheel

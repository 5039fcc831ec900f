#include "pinwheel/substitution.hpp"

#include <cstdlib>
#include <string>

#include "pinwheel/kernels.hpp"

namespace pinwheel {

namespace {

SubdivisionRule build_rule() {
  SubdivisionRule rule;
  rule.factor = ExactScalar::gaussian(2, -1);
  rule.translation = -rule.factor;

  // Pieces of the inflated MINUS prototile (-2,1),(2,-1),(3,1), listed as
  // (right-angle vertex, short-leg end, long-leg end):
  //   t0 (2,0),(2,1),(0,0)    MINUS, identity (the seed stays in the centre)
  //   t1 (0,1),(0,0),(2,1)    MINUS, half turn
  //   t2 (0,1),(0,0),(-2,1)   PLUS
  //   t3 (2,0),(2,-1),(0,0)   PLUS
  //   t4 (2,1),(3,1),(2,-1)   PLUS, quarter turn
  rule.minus_pieces = {{
      {Chirality::Minus, RigidMotion::identity()},
      {Chirality::Minus, {0, 2, ExactScalar::gaussian(2, 1), false}},
      {Chirality::Plus, RigidMotion::translation(ExactScalar::gaussian(-2, 1))},
      {Chirality::Plus, RigidMotion::identity()},
      {Chirality::Plus, {0, 1, ExactScalar::gaussian(2, -1), false}},
  }};

  // conj∘phi∘conj = R_{2 alpha}∘phi, so the PLUS subdivision is the mirror of the
  // MINUS one after a rotation by 2 alpha.
  const RigidMotion two_alpha = RigidMotion::rotation(2, 0);
  for (std::size_t k = 0; k < 5; ++k) {
    const auto& p = rule.minus_pieces[k];
    rule.plus_pieces[k] = {flip(p.chirality), mirror(compose(two_alpha, p.motion))};
  }
  return rule;
}

TriangleVertices inflated_reference(const SubdivisionRule& rule, Chirality c) {
  const auto& ref = reference_vertices(c);
  return {rule.inflate_point(ref[0]), rule.inflate_point(ref[1]), rule.inflate_point(ref[2])};
}

std::string point_text(const ExactScalar& z) {
  return "(" + z.to_key() + ")";
}

}  // namespace

RigidMotion SubdivisionRule::conjugate_by_inflation(const RigidMotion& g) const {
  // phi(z) = f z + c, g(z) = u z + t  =>  phi g phi^-1 (z) = u z + f t + c - u c
  RigidMotion r = g;
  r.t = factor * g.t + translation - g.unit() * translation;
  return r;
}

const SubdivisionRule& subdivision_rule() {
  static const SubdivisionRule rule = [] {
    SubdivisionRule r = build_rule();
    for (Chirality c : {Chirality::Minus, Chirality::Plus}) {
      std::vector<Tile> pieces;
      for (const auto& p : r.pieces(c)) pieces.push_back({p.chirality, p.motion});
      const CoverCheck check = check_cover(pieces, inflated_reference(r, c), 5);
      if (!check.ok()) {
        throw ConfigurationError(std::string("subdivision rule self-check failed for ") +
                                 to_string(c) + ": " + check.witness);
      }
    }
    return r;
  }();
  return rule;
}

CoverCheck check_cover(std::span<const Tile> tiles, const TriangleVertices& region,
                       std::size_t expected_count) {
  CoverCheck out;
  out.count_ok = tiles.size() == expected_count;
  if (!out.count_ok) {
    out.witness = "tile count " + std::to_string(tiles.size()) + " != " + std::to_string(expected_count);
  }

  const auto outline = ccw(to_points(region));
  RealQ5 area_sum;
  out.contained_ok = true;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    const auto v = tiles[i].vertices();
    area_sum += twice_area(v);
    if (out.contained_ok) {
      for (const auto& z : v) {
        if (!in_closed_triangle(to_point(z), outline)) {
          out.contained_ok = false;
          if (out.witness.empty()) out.witness = "tile " + std::to_string(i) + " leaves the region at " + point_text(z);
          break;
        }
      }
    }
  }
  out.area_ok = area_sum == twice_area(region);
  if (!out.area_ok && out.witness.empty()) {
    out.witness = "area mismatch: 2*sum = " + std::to_string(area_sum.to_double());
  }

  std::optional<std::pair<std::uint32_t, std::uint32_t>> overlap;
  try {
    overlap = TileIndex(tiles).first_overlap();
  } catch (const FrameUnavailable&) {
    for (std::size_t i = 0; i < tiles.size() && !overlap; ++i) {
      for (std::size_t j = i + 1; j < tiles.size(); ++j) {
        if (!interiors_disjoint(tiles[i], tiles[j])) {
          overlap = std::make_pair(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
          break;
        }
      }
    }
  }
  out.disjoint_ok = !overlap.has_value();
  if (overlap && out.witness.empty()) {
    out.witness = "tiles " + std::to_string(overlap->first) + " and " + std::to_string(overlap->second) +
                  " overlap";
  }
  return out;
}

std::array<Tile, 5> inflate(const Tile& t) {
  const auto& rule = subdivision_rule();
  const RigidMotion outer = rule.conjugate_by_inflation(t.motion);
  const auto& pieces = rule.pieces(t.chirality);
  std::array<Tile, 5> out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = {pieces[k].chirality, compose(outer, pieces[k].motion)};
  return out;
}

std::uint64_t max_tiles() {
  if (const char* env = std::getenv("PINWHEEL_MAX_TILES")) {
    try {
      const auto v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw std::invalid_argument(std::string("PINWHEEL_MAX_TILES is not a positive integer: ") + env);
  }
  return kDefaultMaxTiles;
}

Supertile supertile(int n, std::uint64_t tile_cap) {
  if (n < 0) throw std::invalid_argument("supertile level must be non-negative");
  std::uint64_t count = 1;
  for (int k = 0; k < n; ++k) {
    count *= 5;
    if (count > tile_cap) {
      throw ResourceLimitError("supertile(" + std::to_string(n) + ") needs more than " +
                               std::to_string(tile_cap) + " tiles (limit PINWHEEL_MAX_TILES=" +
                               std::to_string(tile_cap) + ")");
    }
  }
  const auto& rule = subdivision_rule();
  Supertile s;
  s.level = n;
  s.tiles = {Tile{Chirality::Minus, RigidMotion::identity()}};
  s.outline = reference_vertices(Chirality::Minus);
  for (int k = 0; k < n; ++k) {
    std::vector<Tile> next(s.tiles.size() * 5);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(s.tiles.size()); ++i) {
      const auto children = inflate(s.tiles[static_cast<std::size_t>(i)]);
      for (std::size_t c = 0; c < 5; ++c) next[static_cast<std::size_t>(i) * 5 + c] = children[c];
    }
    s.tiles = std::move(next);
    for (auto& z : s.outline) z = rule.inflate_point(z);
  }
  return s;
}

ParentCell parent_of(const Supertile& s, std::size_t tile_index) {
  if (tile_index >= s.tiles.size() || s.level == 0) {
    throw std::out_of_range("tile index has no parent in this supertile");
  }
  return {tile_index / 5, static_cast<int>(tile_index % 5)};
}

std::vector<int> generation_path(const Supertile& s, std::size_t tile_index) {
  if (tile_index >= s.tiles.size()) throw std::out_of_range("tile index out of range");
  std::vector<int> path(static_cast<std::size_t>(s.level));
  for (int k = s.level - 1; k >= 0; --k) {
    path[static_cast<std::size_t>(k)] = static_cast<int>(tile_index % 5);
    tile_index /= 5;
  }
  return path;
}

}  // namespace pinwheel

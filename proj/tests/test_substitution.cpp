#include <doctest.h>

#include <cstdlib>

#include "oracles.hpp"
#include "pinwheel/kernels.hpp"
#include "pinwheel/patches.hpp"

using namespace pinwheel;

namespace {

oracle::P lattice(const ExactScalar& z) {
  REQUIRE(z.is_gaussian_integer());
  return {z.c1().get_num().get_si(), z.c2().get_num().get_si()};
}

oracle::Tri lattice(const TriangleVertices& v) { return {lattice(v[0]), lattice(v[1]), lattice(v[2])}; }

}  // namespace

TEST_CASE("the five pieces are a lattice cover of the 1-supertile") {
  const oracle::Tri parent{oracle::P{-2, 1}, oracle::P{2, -1}, oracle::P{3, 1}};
  const auto covers = oracle::lattice_covers(parent);
  // the central 2x1 rectangle splits along either diagonal
  REQUIRE(covers.size() == 2);

  const auto s1 = supertile(1);
  std::vector<oracle::Tri> pieces;
  for (const auto& t : s1.tiles) pieces.push_back(lattice(t.vertices()));
  std::sort(pieces.begin(), pieces.end());
  CHECK(std::find(covers.begin(), covers.end(), pieces) != covers.end());

  // the listed pieces, in rule order
  const std::array<oracle::Tri, 5> listed{{{oracle::P{2, 0}, {2, 1}, {0, 0}},
                                           {oracle::P{0, 1}, {0, 0}, {2, 1}},
                                           {oracle::P{0, 1}, {0, 0}, {-2, 1}},
                                           {oracle::P{2, 0}, {2, -1}, {0, 0}},
                                           {oracle::P{2, 1}, {3, 1}, {2, -1}}}};
  for (std::size_t i = 0; i < 5; ++i) CHECK(lattice(s1.tiles[i].vertices()) == listed[i]);
  int minus = 0;
  for (const auto& t : s1.tiles) minus += t.chirality == Chirality::Minus;
  CHECK(minus == 2);
  CHECK(s1.tiles[0].chirality == Chirality::Minus);
  CHECK(s1.tiles[1].chirality == Chirality::Minus);
}

TEST_CASE("rule self-check and inflation") {
  const auto& rule = subdivision_rule();
  CHECK(rule.factor == ExactScalar::gaussian(2, -1));
  const Tile seed{Chirality::Minus, RigidMotion::identity()};
  const auto kids = inflate(seed);
  RealQ5 area;
  for (std::size_t i = 0; i < 5; ++i) {
    area += twice_area(kids[i].vertices());
    for (std::size_t j = i + 1; j < 5; ++j) CHECK(interiors_disjoint(kids[i], kids[j]));
  }
  CHECK(area == RealQ5(10));
  // midpoint of A-B is a vertex of t0..t3
  for (std::size_t i = 0; i < 4; ++i) {
    const auto v = kids[i].vertices();
    CHECK(std::count(v.begin(), v.end(), ExactScalar(0)) == 1);
  }
  // the mirror seed subdivides into the mirror pieces, up to one common motion
  const auto mirrored = inflate(mirror(seed));
  const auto h = congruence(mirror(kids[0]), mirrored[0]);
  REQUIRE(h.has_value());
  for (std::size_t i = 0; i < 5; ++i) CHECK(apply(*h, mirror(kids[i])) == mirrored[i]);
}

TEST_CASE("supertiles: counts, chirality recursion, nesting, coordinates") {
  std::array<std::uint64_t, 2> x{1, 0};
  Supertile prev = supertile(0);
  CHECK(prev.size() == 1);
  CHECK(prev.tiles[0].vertices() == reference_vertices(Chirality::Minus));
  for (int n = 1; n <= 6; ++n) {
    const auto s = supertile(n);
    CHECK(s.size() == prev.size() * 5);
    x = {2 * x[0] + 3 * x[1], 3 * x[0] + 2 * x[1]};
    std::array<std::uint64_t, 2> seen{0, 0};
    for (const auto& t : s.tiles) ++seen[static_cast<int>(t.chirality)];
    CHECK(seen == x);
    // the previous supertile is the prefix
    CHECK(std::equal(prev.tiles.begin(), prev.tiles.end(), s.tiles.begin()));
    // coordinates stay in Q(i) with denominators dividing 5^(n-1); alpha exponents even
    BigInt bound = 1;
    for (int k = 1; k < n; ++k) bound *= 5;
    for (const auto& t : s.tiles) {
      CHECK(t.motion.a % 2 == 0);
      for (const auto& z : t.vertices()) {
        CHECK(z.in_gaussian_rationals());
        CHECK(bound % z.c1().get_den() == 0);
        CHECK(bound % z.c2().get_den() == 0);
      }
    }
    const auto cover = check_cover(s.tiles, s.outline, s.size());
    CHECK_MESSAGE(cover.ok(), cover.witness);
    prev = s;
  }
  CHECK(supertile(3).size() == 125);
  const auto s1 = supertile(1);
  CHECK(s1.outline == TriangleVertices{ExactScalar::gaussian(2, -1), ExactScalar::gaussian(3, 1), ExactScalar::gaussian(-2, 1)});
  CHECK(supertile(2).outline == TriangleVertices{ExactScalar::gaussian(1, -3), ExactScalar::gaussian(5, 0), ExactScalar::gaussian(-5, 5)});
}

TEST_CASE("generation tree") {
  const auto s1 = supertile(1);
  CHECK(parent_of(s1, 0).sub_supertile == 0);
  CHECK(parent_of(s1, 0).position == 0);
  const auto s3 = supertile(3);
  std::vector<int> children(25, 0);
  for (std::size_t i = 0; i < s3.size(); ++i) {
    const auto p = parent_of(s3, i);
    CHECK(p.position == static_cast<int>(i % 5));
    ++children[p.sub_supertile];
    CHECK(generation_path(s3, i).size() == 3);
  }
  CHECK(std::all_of(children.begin(), children.end(), [](int c) { return c == 5; }));
}

TEST_CASE("tile budget") {
  CHECK_THROWS_AS(supertile(4, 100), ResourceLimitError);
  setenv("PINWHEEL_MAX_TILES", "30", 1);
  CHECK(max_tiles() == 30);
  CHECK_THROWS_AS(supertile(3), ResourceLimitError);
  unsetenv("PINWHEEL_MAX_TILES");
  CHECK(max_tiles() == kDefaultMaxTiles);
}

TEST_CASE("adjacency kernel matches the serial reference") {
  const auto s = supertile(3);
  const TileIndex idx(s.tiles);
  for (auto conv : {CollarConvention::Closed, CollarConvention::Edge}) {
    CHECK(idx.adjacency(conv) == adjacency_reference(s.tiles, conv));
  }
  CHECK_FALSE(idx.first_overlap().has_value());
}

TEST_CASE("outline detection by angle sums matches direct outline tests") {
  const Context ctx(5);
  const auto flags = ctx.index().touches_outline();
  std::size_t flagged = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    bool on = false;
    for (const auto& v : ctx.index().vertices(i)) on = on || ctx.point_on_outline(v);
    CHECK(flags[i] == on);
    CHECK(flags[i] == ctx.is_boundary(static_cast<std::uint32_t>(i)));
    flagged += flags[i];
  }
  CHECK(flagged > 0);
}

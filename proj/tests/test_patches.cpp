#include <doctest.h>

#include <algorithm>
#include <random>

#include "pinwheel/patches.hpp"

using namespace pinwheel;

namespace {

RigidMotion random_motion(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> a(-6, 6), t(-20, 20), den(1, 7);
  std::uniform_int_distribution<int> b(0, 3);
  RigidMotion g = RigidMotion::rotation(a(rng), b(rng));
  g.t = ExactScalar::from_components(Rational(t(rng), den(rng)), Rational(t(rng), den(rng)), Rational(t(rng), den(rng)),
                                     Rational(t(rng), den(rng)));
  return g;
}

bool on_segment(const ExactScalar& p, const ExactScalar& a, const ExactScalar& b) {
  if (orientation_sign(a, b, p) != 0) return false;
  const RealQ5 dot = ((p - a) * (b - a).conj()).re();
  return dot.sign() >= 0 && (dot - (b - a).norm()).sign() <= 0;
}

// Closed triangles with disjoint interiors meet iff a vertex of one lies on an edge of the other.
bool meet_at_boundary(const Tile& x, const Tile& y) {
  const auto vx = x.vertices(), vy = y.vertices();
  for (int k = 0; k < 2; ++k) {
    const auto& p = k ? vx : vy;
    const auto& q = k ? vy : vx;
    for (const auto& v : p) {
      for (int e = 0; e < 3; ++e) {
        if (on_segment(v, q[e], q[(e + 1) % 3])) return true;
      }
    }
  }
  return false;
}

double dist2(const ExactScalar& a, const ExactScalar& b) { return (a - b).norm().to_double(); }

const Context& ctx5() {
  static const Context c(5);
  return c;
}

std::vector<std::uint32_t> interior_tiles(const Context& c, std::size_t want) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < c.supertile().size() && out.size() < want; i += 37) {
    if (c.try_corona(std::vector<std::uint32_t>{i}, 2)) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST_CASE("single tiles: one key per chirality") {
  std::mt19937_64 rng(7);
  const Patch minus{{Tile{Chirality::Minus, RigidMotion::identity()}}, {}};
  const Patch plus = mirror(minus);
  const auto km = canonicalize(minus).key, kp = canonicalize(plus).key;
  CHECK_FALSE(km == kp);
  for (int n = 0; n < 50; ++n) {
    const auto g = random_motion(rng);
    CHECK(canonicalize(apply(g, minus)).key == km);
    CHECK(canonicalize(apply(g, plus)).key == kp);
  }
  CHECK(symmetry_group(minus).order == 1);
}

TEST_CASE("canonical keys are invariant under direct motions and distinguish mirrors") {
  std::mt19937_64 rng(99);
  const auto& c = ctx5();
  for (auto i : interior_tiles(c, 6)) {
    const auto tiles = c.corona(std::vector<std::uint32_t>{i}, 1);
    const Patch p = c.patch(tiles);
    const auto centre = static_cast<std::size_t>(std::find(tiles.begin(), tiles.end(), i) - tiles.begin());
    const auto base = canonicalize_anchored(p, centre);
    // the reported motion really maps the patch onto the normalized list
    std::vector<std::string> moved, normal;
    for (const auto& t : p.tiles) moved.push_back(tile_text(apply(base.motion, t)));
    for (const auto& t : base.normalized) normal.push_back(tile_text(t));
    std::sort(moved.begin(), moved.end());
    std::sort(normal.begin(), normal.end());
    CHECK(moved == normal);
    for (int n = 0; n < 20; ++n) {
      const Patch q = apply(random_motion(rng), p);
      CHECK(canonicalize_anchored(q, centre).key == base.key);
      CHECK(canonicalize(q).key == canonicalize(p).key);
    }
    CHECK_FALSE(canonicalize_anchored(mirror(p), centre).key == base.key);
  }
}

TEST_CASE("coronas: 0-corona, nesting and the 1-corona against a brute-force touch test") {
  const auto& c = ctx5();
  const auto& tiles = c.supertile().tiles;
  const auto seeds = interior_tiles(c, 12);
  REQUIRE(seeds.size() >= 6);
  for (auto i : seeds) {
    const std::vector<std::uint32_t> s{i};
    CHECK(c.corona(s, 0) == s);
    const auto c1 = c.corona(s, 1), c2 = c.corona(s, 2);
    CHECK(std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()));
    CHECK(c2.size() > c1.size());
    std::vector<std::uint32_t> brute{i};
    for (std::uint32_t j = 0; j < tiles.size(); ++j) {
      if (j == i || dist2(tiles[i].motion.t, tiles[j].motion.t) > 40) continue;
      if (meet_at_boundary(tiles[i], tiles[j])) brute.push_back(j);
    }
    std::sort(brute.begin(), brute.end());
    CHECK(c1 == brute);
  }
}

TEST_CASE("edge adjacency is contained in closed adjacency") {
  const auto s = supertile(3);
  const TileIndex idx(s.tiles);
  const auto closed = idx.adjacency(CollarConvention::Closed), edge = idx.adjacency(CollarConvention::Edge);
  std::size_t strict = 0;
  for (std::size_t v = 0; v < closed.size(); ++v) {
    const auto a = closed.neighbors(v), b = edge.neighbors(v);
    CHECK(std::includes(a.begin(), a.end(), b.begin(), b.end()));
    strict += b.size() < a.size();
  }
  CHECK(strict > 0);
}

TEST_CASE("boundary tiles have no complete corona") {
  const auto& c = ctx5();
  std::size_t boundary = 0;
  for (std::uint32_t i = 0; i < c.supertile().size(); ++i) {
    if (!c.is_boundary(i)) continue;
    ++boundary;
    const std::vector<std::uint32_t> s{i};
    CHECK_THROWS_AS(c.corona(s, 1), InsufficientContext);
    CHECK_FALSE(c.try_corona(s, 1).has_value());
  }
  CHECK(boundary > 0);
}

TEST_CASE("vertex coronas: symmetric ones are half turns") {
  const auto classes = vertex_coronas(ctx5());
  REQUIRE_FALSE(classes.empty());
  std::size_t symmetric = 0;
  for (const auto& k : classes) {
    const auto sym = symmetry_group(k.patch);
    CHECK(sym.order == k.symmetry_order);
    CHECK((sym.order == 1 || sym.order == 2));
    if (sym.order == 2) {
      ++symmetric;
      CHECK(sym.angle == "pi");
      REQUIRE(sym.center.has_value());
      // the half turn maps the patch onto itself
      CHECK(canonicalize(apply(sym.elements[1], k.patch)).key == canonicalize(k.patch).key);
    }
    CHECK(canonicalize(k.patch).key == k.key);
  }
  CHECK(symmetric > 0);
}

TEST_CASE("symmetric census: live stars and survivors never increase") {
  const Context c(6);
  const auto stars = symmetric_star_dynamics(c);
  CHECK(stars.periodic_count == 6);
  const auto census = symmetric_chain_census(c, stars, 4);
  REQUIRE(census.star_surviving.size() == stars.stars.size());
  for (int n = 1; n <= 4; ++n) {
    CHECK(census.live_stars(n) <= census.live_stars(n - 1));
    CHECK(census.surviving[n] <= census.surviving[n - 1]);
    for (const auto& s : census.star_surviving) CHECK(s[n] <= s[n - 1]);
  }
  for (std::size_t n = 0; n < census.chains.size(); ++n) {
    CHECK(std::is_sorted(census.chains[n].begin(), census.chains[n].end(),
                         [](const auto& a, const auto& b) { return a.key < b.key; }));
  }
}

TEST_CASE("punctures lie in the open prototiles") {
  for (auto ch : {Chirality::Minus, Chirality::Plus}) {
    const auto& v = reference_vertices(ch);
    const auto p = puncture(ch);
    const int s = orientation_sign(v[0], v[1], v[2]);
    CHECK(orientation_sign(v[0], v[1], p) == s);
    CHECK(orientation_sign(v[1], v[2], p) == s);
    CHECK(orientation_sign(v[2], v[0], p) == s);
  }
  CHECK(puncture(Chirality::Minus) == ExactScalar::from_components(Rational(3, 2), Rational(1, 2), 0, 0));
}

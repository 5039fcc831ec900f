#include "pinwheel/patches.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace pinwheel {

namespace {

constexpr std::size_t kChunk = 2048;

struct PointHash {
  std::size_t operator()(const IntPoint& p) const {
    const auto x = static_cast<std::uint64_t>(static_cast<long long>(p.x));
    const auto y = static_cast<std::uint64_t>(static_cast<long long>(p.y));
    return static_cast<std::size_t>(x * 0x9E3779B97F4A7C15ULL ^ (y + 0x7F4A7C159E3779B9ULL + (x << 7)));
  }
};

std::string join_key(Chirality anchor, std::vector<std::string>& texts) {
  std::sort(texts.begin(), texts.end());
  std::string out = anchor == Chirality::Minus ? "M|" : "P|";
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (i) out += ';';
    out += texts[i];
  }
  return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CanonicalKey make_key(std::string text) {
  CanonicalKey k;
  k.hash = fnv1a64(text);
  k.text = std::move(text);
  return k;
}

std::string CanonicalKey::hash_hex() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

const RigidMotion& standard_pose() {
  // z -> -z + 2 sends the reference right-angle vertex (2,0) to the origin and
  // the long-leg end (0,0) to (2,0).
  static const RigidMotion k{0, 2, ExactScalar(2), false};
  return k;
}

std::string tile_text(const Tile& t) {
  std::string s = t.chirality == Chirality::Minus ? "M:" : "P:";
  s += std::to_string(t.motion.a);
  s += ':';
  s += std::to_string(t.motion.b);
  s += ':';
  s += t.motion.t.to_key();
  return s;
}

CanonicalForm canonicalize_anchored(const Patch& p, std::size_t anchor) {
  if (anchor >= p.tiles.size()) throw std::out_of_range("anchor outside patch");
  CanonicalForm f;
  f.anchor = anchor;
  f.motion = compose(standard_pose(), inverse(p.tiles[anchor].motion));

  std::vector<std::pair<std::string, Tile>> items;
  items.reserve(p.tiles.size());
  for (const auto& t : p.tiles) {
    Tile n = apply(f.motion, t);
    items.emplace_back(tile_text(n), std::move(n));
  }
  const Tile anchored = apply(f.motion, p.tiles[anchor]);
  std::sort(items.begin(), items.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::string> texts;
  texts.reserve(items.size());
  f.normalized.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].second == anchored) f.normalized_anchor = i;
    texts.push_back(std::move(items[i].first));
    f.normalized.push_back(std::move(items[i].second));
  }
  f.key = make_key(join_key(p.tiles[anchor].chirality, texts));
  return f;
}

CanonicalForm canonicalize(const Patch& p, std::span<const std::size_t> candidate_anchors) {
  if (p.tiles.empty()) throw std::invalid_argument("cannot canonicalize an empty patch");
  std::vector<std::size_t> all;
  if (candidate_anchors.empty()) {
    all.resize(p.tiles.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    candidate_anchors = all;
  }
  std::optional<CanonicalForm> best;
  for (std::size_t a : candidate_anchors) {
    CanonicalForm f = canonicalize_anchored(p, a);
    if (!best || f.key.text < best->key.text) best = std::move(f);
  }
  return *best;
}

ClopenSetKey clopen_key(const CanonicalForm& f) { return {f.key, f.normalized_anchor}; }

ExactScalar puncture(Chirality c) {
  const ExactScalar minus = ExactScalar::from_components(Rational(3, 2), Rational(1, 2), 0, 0);
  return c == Chirality::Minus ? minus : minus.conj();
}

Patch apply(const RigidMotion& g, const Patch& p) {
  Patch out;
  out.context = p.context;
  out.tiles.reserve(p.tiles.size());
  for (const auto& t : p.tiles) out.tiles.push_back(apply(g, t));
  return out;
}

Patch mirror(const Patch& p) {
  Patch out;
  out.context = p.context;
  out.tiles.reserve(p.tiles.size());
  for (const auto& t : p.tiles) out.tiles.push_back(mirror(t));
  return out;
}

SymmetryReport symmetry_group(const Patch& p) {
  SymmetryReport r;
  if (p.tiles.empty()) return r;
  std::unordered_set<std::string> present;
  for (const auto& t : p.tiles) present.insert(tile_text(t));
  const Tile& first = p.tiles.front();
  const RigidMotion first_inv = inverse(first.motion);
  for (const auto& t : p.tiles) {
    if (t.chirality != first.chirality) continue;
    const RigidMotion m = compose(t.motion, first_inv);
    bool fixes = true;
    for (const auto& s : p.tiles) {
      if (!present.contains(tile_text(apply(m, s)))) {
        fixes = false;
        break;
      }
    }
    if (fixes) r.elements.push_back(m);
  }
  r.order = static_cast<int>(r.elements.size());
  for (const auto& m : r.elements) {
    if (m.is_identity()) continue;
    const ExactScalar u = m.unit();
    r.center = m.t / (ExactScalar(1) - u);
    r.angle = (m.a == 0 && m.b == 2) ? "pi" : "a=" + std::to_string(m.a) + ",b=" + std::to_string(m.b);
  }
  return r;
}

Context::Context(int level, CollarConvention conv)
    : supertile_(pinwheel::supertile(level)),
      conv_(conv),
      index_(supertile_.tiles, [this] {
        // the half makes hypotenuse midpoints and symmetry centres integral in the frame
        std::vector<ExactScalar> extra(supertile_.outline.begin(), supertile_.outline.end());
        extra.push_back(ExactScalar::from_components(Rational(1, 2), Rational(1, 2), 0, 0));
        return extra;
      }()),
      graph_(index_.adjacency(conv)) {
  boundary_.assign(index_.size(), false);
  for (std::size_t i = 0; i < index_.size(); ++i) {
    for (const auto& v : index_.vertices(i)) {
      if (point_on_outline(v)) {
        boundary_[i] = true;
        break;
      }
    }
  }
}

bool Context::point_on_outline(const IntPoint& p) const {
  const IntPoint a = index_.map(supertile_.outline[0]);
  const IntPoint b = index_.map(supertile_.outline[1]);
  const IntPoint c = index_.map(supertile_.outline[2]);
  return on_closed_segment(p, a, b) || on_closed_segment(p, b, c) || on_closed_segment(p, c, a);
}

std::optional<std::vector<std::uint32_t>> Context::try_corona(std::span<const std::uint32_t> seeds,
                                                              int n) const {
  std::vector<int> layer;
  auto tiles = grow(graph_, seeds, n, &layer);
  for (std::size_t k = 0; k < tiles.size(); ++k) {
    if (layer[k] < n && boundary_[tiles[k]]) return std::nullopt;
  }
  return tiles;
}

std::vector<std::uint32_t> Context::corona(std::span<const std::uint32_t> seeds, int n) const {
  auto r = try_corona(seeds, n);
  if (!r) {
    throw InsufficientContext("the " + std::to_string(n) + "-corona reaches the outline of supertile(" +
                              std::to_string(level()) + "); raise the supertile level");
  }
  return *r;
}

Patch Context::patch(std::span<const std::uint32_t> tiles) const {
  Patch p;
  p.context = "supertile(" + std::to_string(level()) + ")";
  p.tiles.reserve(tiles.size());
  for (auto i : tiles) p.tiles.push_back(supertile_.tiles[i]);
  return p;
}

std::optional<std::uint32_t> Context::half_turn_image(std::uint32_t i, const IntPoint& center) const {
  const auto& v = index_.vertices(i);
  const IntPoint twice{center.x * 2, center.y * 2};
  return index_.find(index_.chirality(i), twice - v[0], twice - v[2]);
}

std::vector<CollaredClass> collared_classes(const Context& ctx, int n) {
  std::map<CanonicalKey, CollaredClass> found;
  const std::size_t total = ctx.index().size();
  for (std::size_t start = 0; start < total; start += kChunk) {
    const std::size_t stop = std::min(total, start + kChunk);
    std::vector<std::optional<CanonicalForm>> forms(stop - start);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t si = static_cast<std::ptrdiff_t>(start); si < static_cast<std::ptrdiff_t>(stop); ++si) {
      const auto i = static_cast<std::uint32_t>(si);
      const std::uint32_t seed[] = {i};
      auto tiles = ctx.try_corona(seed, n);
      if (!tiles) continue;
      const auto pos = static_cast<std::size_t>(std::lower_bound(tiles->begin(), tiles->end(), i) - tiles->begin());
      forms[i - start] = canonicalize_anchored(ctx.patch(*tiles), pos);
    }
    for (auto& f : forms) {
      if (!f) continue;
      auto it = found.find(f->key);
      if (it == found.end()) {
        CollaredClass c;
        c.key = f->key;
        c.tiles = std::move(f->normalized);
        c.center = f->normalized_anchor;
        it = found.emplace(c.key, std::move(c)).first;
      }
      ++it->second.count;
    }
  }
  std::vector<CollaredClass> out;
  out.reserve(found.size());
  for (auto& [k, c] : found) out.push_back(std::move(c));
  return out;
}

CollaredEnumeration enumerate_collared_prototiles(int context_level, int radius, CollarConvention conv) {
  CollaredEnumeration e;
  e.level = context_level;
  e.radius = radius;
  e.convention = conv;
  const auto at_level = collared_classes(Context(context_level, conv), radius);
  e.classes = collared_classes(Context(context_level + 1, conv), radius);
  e.count_at_level = at_level.size();
  e.count_at_next = e.classes.size();
  e.stabilized = at_level.size() == e.classes.size() &&
                 std::equal(at_level.begin(), at_level.end(), e.classes.begin(),
                            [](const auto& x, const auto& y) { return x.key == y.key; });
  if (!e.stabilized) {
    throw StabilizationError("collared enumeration did not stabilize: " + std::to_string(e.count_at_level) +
                             " classes at level " + std::to_string(context_level) + ", " +
                             std::to_string(e.count_at_next) + " at level " +
                             std::to_string(context_level + 1));
  }
  return e;
}

namespace {

struct CentrePoint {
  IntPoint p;
  bool vertex = false;
  bool midpoint = false;
};

// Interior vertices and hypotenuse midpoints of the context, in first-seen order.
std::vector<CentrePoint> centre_points(const Context& ctx) {
  std::vector<CentrePoint> out;
  std::unordered_map<IntPoint, std::size_t, PointHash> seen;
  auto add = [&](const IntPoint& p, bool vertex) {
    auto [it, inserted] = seen.emplace(p, out.size());
    if (inserted) out.push_back({p, false, false});
    auto& c = out[it->second];
    (vertex ? c.vertex : c.midpoint) = true;
  };
  for (std::size_t i = 0; i < ctx.index().size(); ++i) {
    const auto& v = ctx.index().vertices(i);
    for (const auto& p : v) add(p, true);
    const IntPoint sum = v[1] + v[2];
    add({sum.x / 2, sum.y / 2}, false);
  }
  std::erase_if(out, [&](const CentrePoint& c) { return ctx.point_on_outline(c.p); });
  return out;
}

bool half_turn_symmetric(const Context& ctx, std::span<const std::uint32_t> tiles, const IntPoint& c) {
  for (auto i : tiles) {
    auto img = ctx.half_turn_image(i, c);
    if (!img || !std::binary_search(tiles.begin(), tiles.end(), *img)) return false;
  }
  return true;
}

// Every half-turn centre is the midpoint of the right-angle vertices of two
// tiles swapped by the turn, and those two tiles touch at the centre.
std::vector<IntPoint> half_turn_centres(const Context& ctx) {
  const auto& idx = ctx.index();
  std::vector<IntPoint> out;
  std::unordered_set<IntPoint, PointHash> seen;
  for (std::uint32_t i = 0; i < idx.size(); ++i) {
    for (std::uint32_t j : ctx.graph().neighbors(i)) {
      if (j <= i || idx.chirality(i) != idx.chirality(j)) continue;
      const IntPoint s = idx.vertices(i)[0] + idx.vertices(j)[0];
      if (s.x % 2 != 0 || s.y % 2 != 0) continue;
      const IntPoint c{s.x / 2, s.y / 2};
      const auto img = ctx.half_turn_image(i, c);
      if (!img || *img != j || ctx.point_on_outline(c)) continue;
      if (seen.insert(c).second) out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::vector<VertexCoronaClass> vertex_coronas(const Context& ctx) {
  const auto points = centre_points(ctx);
  std::map<CanonicalKey, VertexCoronaClass> found;
  for (std::size_t start = 0; start < points.size(); start += kChunk) {
    const std::size_t stop = std::min(points.size(), start + kChunk);
    std::vector<std::optional<CanonicalForm>> forms(stop - start);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t si = static_cast<std::ptrdiff_t>(start); si < static_cast<std::ptrdiff_t>(stop); ++si) {
      const auto k = static_cast<std::size_t>(si);
      const auto star = ctx.index().tiles_containing(points[k].p);
      forms[k - start] = canonicalize(ctx.patch(star));
    }
    for (std::size_t k = start; k < stop; ++k) {
      auto& f = forms[k - start];
      auto it = found.find(f->key);
      if (it == found.end()) {
        VertexCoronaClass c;
        c.key = f->key;
        c.patch.tiles = std::move(f->normalized);
        it = found.emplace(c.key, std::move(c)).first;
      }
      it->second.around_vertex |= points[k].vertex;
      it->second.around_midpoint |= points[k].midpoint;
      ++it->second.count;
    }
  }
  std::vector<VertexCoronaClass> out;
  out.reserve(found.size());
  for (auto& [k, c] : found) {
    c.symmetry_order = symmetry_group(c.patch).order;
    out.push_back(std::move(c));
  }
  return out;
}

VertexCoronaEnumeration enumerate_vertex_coronas(int context_level) {
  VertexCoronaEnumeration e;
  const auto at_level = vertex_coronas(Context(context_level));
  e.classes = vertex_coronas(Context(context_level + 1));
  e.count_at_level = at_level.size();
  e.count_at_next = e.classes.size();
  e.stabilized = at_level.size() == e.classes.size() &&
                 std::equal(at_level.begin(), at_level.end(), e.classes.begin(),
                            [](const auto& x, const auto& y) { return x.key == y.key; });
  if (!e.stabilized) {
    throw StabilizationError("vertex corona enumeration did not stabilize: " +
                             std::to_string(e.count_at_level) + " vs " + std::to_string(e.count_at_next));
  }
  return e;
}

std::optional<std::size_t> StarDynamics::find(const CanonicalKey& k) const {
  auto it = std::lower_bound(stars.begin(), stars.end(), k,
                             [](const SymmetricStar& s, const CanonicalKey& key) { return s.key < key; });
  if (it == stars.end() || !(it->key == k)) return std::nullopt;
  return static_cast<std::size_t>(it - stars.begin());
}

namespace {

std::optional<CanonicalForm> symmetric_star_at(const Context& ctx, const IntPoint& c) {
  const auto star = ctx.index().tiles_containing(c);
  if (!half_turn_symmetric(ctx, star, c)) return std::nullopt;
  return canonicalize(ctx.patch(star));
}

}  // namespace

StarDynamics symmetric_star_dynamics(const Context& ctx) {
  StarDynamics d;
  d.context_level = ctx.level();
  std::map<CanonicalKey, SymmetricStar> found;
  for (const auto& c : half_turn_centres(ctx)) {
    auto f = symmetric_star_at(ctx, c);
    if (!f) continue;
    auto it = found.find(f->key);
    if (it == found.end()) {
      SymmetricStar s;
      s.key = f->key;
      s.patch.tiles = std::move(f->normalized);
      const auto sym = symmetry_group(s.patch);
      if (sym.order != 2 || !sym.center) {
        throw std::logic_error("symmetric star with stabilizer of order " + std::to_string(sym.order));
      }
      s.center = *sym.center;
      it = found.emplace(s.key, std::move(s)).first;
    }
    ++it->second.occurrences;
  }
  for (auto& [k, s] : found) d.stars.push_back(std::move(s));

  const auto& rule = subdivision_rule();
  const ExactScalar half = ExactScalar::from_components(Rational(1, 2), Rational(1, 2), 0, 0);
  for (auto& s : d.stars) {
    std::vector<Tile> children;
    for (const auto& t : s.patch.tiles) {
      for (const auto& ch : inflate(t)) children.push_back(ch);
    }
    const ExactScalar centre = rule.inflate_point(s.center);
    const ExactScalar extra[] = {centre, half};
    const TileIndex index(children, extra);
    Patch next;
    for (auto j : index.tiles_containing(index.map(centre))) next.tiles.push_back(children[j]);
    const auto succ = d.find(canonicalize(next).key);
    if (!succ) {
      throw InsufficientContext("a subdivided symmetric star is missing from the catalogue of supertile(" +
                                std::to_string(ctx.level()) + ")");
    }
    s.successor = *succ;
  }
  for (std::size_t i = 0; i < d.stars.size(); ++i) {
    std::size_t j = d.stars[i].successor;
    for (std::size_t step = 0; step < d.stars.size() && j != i; ++step) j = d.stars[j].successor;
    d.stars[i].periodic = j == i;
    d.periodic_count += d.stars[i].periodic;
  }
  return d;
}

ChainCensus symmetric_chain_census(const Context& ctx, const StarDynamics& stars, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("chain depth must be non-negative");
  const auto depths = static_cast<std::size_t>(max_depth) + 1;
  ChainCensus census;
  census.context_level = ctx.level();
  census.surviving.assign(depths, 0);
  census.exhausted.assign(depths, 0);
  census.star_surviving.assign(stars.stars.size(), std::vector<std::uint64_t>(depths, 0));
  census.star_exhausted.assign(stars.stars.size(), std::vector<std::uint64_t>(depths, 0));
  std::vector<std::map<CanonicalKey, SymmetricChain>> per_depth(depths);
  for (const auto& c : half_turn_centres(ctx)) {
    const auto star = ctx.index().tiles_containing(c);
    if (!half_turn_symmetric(ctx, star, c)) continue;

    std::optional<CanonicalKey> star_key;
    std::optional<std::size_t> star_id;
    for (int n = 0; n <= max_depth; ++n) {
      const auto grown = ctx.try_corona(star, n);
      if (!grown) {
        ++census.exhausted[static_cast<std::size_t>(n)];
        if (star_id) ++census.star_exhausted[*star_id][static_cast<std::size_t>(n)];
        break;
      }
      if (!half_turn_symmetric(ctx, *grown, c)) break;
      ++census.surviving[static_cast<std::size_t>(n)];

      std::vector<std::size_t> anchors;
      for (auto s : star) {
        anchors.push_back(static_cast<std::size_t>(std::lower_bound(grown->begin(), grown->end(), s) - grown->begin()));
      }
      CanonicalForm f = canonicalize(ctx.patch(*grown), anchors);
      if (!star_key) {
        star_key = f.key;
        star_id = stars.find(f.key);
        if (!star_id) throw std::logic_error("symmetric star missing from the dynamics: " + f.key.hash_hex());
      }
      ++census.star_surviving[*star_id][static_cast<std::size_t>(n)];

      auto& bucket = per_depth[static_cast<std::size_t>(n)];
      auto it = bucket.find(f.key);
      if (it == bucket.end()) {
        SymmetricChain ch;
        ch.key = f.key;
        ch.star_key = *star_key;
        ch.patch.tiles = std::move(f.normalized);
        ch.anchor = f.normalized_anchor;
        it = bucket.emplace(ch.key, std::move(ch)).first;
      }
      ++it->second.occurrences;
    }
  }

  census.chains.resize(depths);
  for (std::size_t n = 0; n < depths; ++n) {
    for (const auto& ch : symmetric_tiling_coronas(stars, static_cast<int>(n))) {
      auto it = per_depth[n].find(ch.key);
      if (it != per_depth[n].end()) it->second.persistent = true;
    }
    census.counts.push_back(per_depth[n].size());
    std::size_t persistent = 0;
    for (auto& [k, ch] : per_depth[n]) {
      persistent += ch.persistent;
      census.chains[n].push_back(std::move(ch));
    }
    census.persistent_counts.push_back(persistent);
  }
  return census;
}

std::size_t ChainCensus::live_stars(int n) const {
  std::size_t live = 0;
  for (const auto& s : star_surviving) live += s.at(static_cast<std::size_t>(n)) > 0;
  return live;
}

namespace {

// Radius of a disc about c covered by the star: a ray from c leaves its tile
// through an edge that misses c.
double covered_radius(const Patch& star, const ExactScalar& c) {
  const double cx = c.x_approx(), cy = c.y_approx();
  double r = std::numeric_limits<double>::infinity();
  const ExactPoint cp = to_point(c);
  for (const auto& t : star.tiles) {
    const auto v = t.vertices();
    for (int e = 0; e < 3; ++e) {
      const auto& a = v[e];
      const auto& b = v[(e + 1) % 3];
      if (on_closed_segment(cp, to_point(a), to_point(b))) continue;
      const double ax = a.x_approx(), ay = a.y_approx(), bx = b.x_approx(), by = b.y_approx();
      const double dx = bx - ax, dy = by - ay;
      const double s = std::clamp(((cx - ax) * dx + (cy - ay) * dy) / (dx * dx + dy * dy), 0.0, 1.0);
      r = std::min(r, std::hypot(cx - ax - s * dx, cy - ay - s * dy));
    }
  }
  return r;
}

}  // namespace

std::vector<SymmetricChain> symmetric_tiling_coronas(const StarDynamics& stars, int n) {
  if (n < 0) throw std::invalid_argument("corona depth must be non-negative");
  const auto& rule = subdivision_rule();
  const ExactScalar half = ExactScalar::from_components(Rational(1, 2), Rational(1, 2), 0, 0);
  // every tile of the N-corona lies within (N+1) tile diameters of the centre
  const double reach = (n + 1) * std::sqrt(5.0) + 1e-6;
  std::vector<SymmetricChain> out;
  for (std::size_t s = 0; s < stars.stars.size(); ++s) {
    if (!stars.stars[s].periodic) continue;
    std::vector<std::size_t> cycle{s};
    for (std::size_t j = stars.stars[s].successor; j != s; j = stars.stars[j].successor) cycle.push_back(j);

    // predecessor m steps back along the cycle, inflated m times
    std::size_t m = 0;
    std::size_t pred = s;
    while (covered_radius(stars.stars[pred].patch, stars.stars[pred].center) * std::pow(std::sqrt(5.0), m) <= reach) {
      ++m;
      pred = cycle[(cycle.size() - m % cycle.size()) % cycle.size()];
    }
    std::vector<Tile> tiles = stars.stars[pred].patch.tiles;
    ExactScalar centre = stars.stars[pred].center;
    for (std::size_t k = 0; k < m; ++k) {
      std::vector<Tile> next;
      next.reserve(tiles.size() * 5);
      for (const auto& t : tiles) {
        for (const auto& ch : inflate(t)) next.push_back(ch);
      }
      tiles = std::move(next);
      centre = rule.inflate_point(centre);
    }
    const ExactScalar extra[] = {centre, half};
    const TileIndex index(tiles, extra);
    const IntPoint c = index.map(centre);
    const auto star = index.tiles_containing(c);
    const auto grown = grow(index.adjacency(CollarConvention::Closed), star, n);

    Patch star_patch;
    for (auto j : star) star_patch.tiles.push_back(tiles[j]);
    if (!(canonicalize(star_patch).key == stars.stars[s].key)) {
      throw std::logic_error("subdivided cycle predecessor does not reproduce its star");
    }
    Patch patch;
    std::vector<std::size_t> anchors;
    for (auto j : grown) patch.tiles.push_back(tiles[j]);
    for (auto j : star) {
      anchors.push_back(static_cast<std::size_t>(std::lower_bound(grown.begin(), grown.end(), j) - grown.begin()));
    }
    CanonicalForm f = canonicalize(patch, anchors);
    SymmetricChain ch;
    ch.key = f.key;
    ch.star_key = stars.stars[s].key;
    ch.patch.tiles = std::move(f.normalized);
    ch.patch.context = "symmetric tiling " + std::to_string(out.size());
    ch.anchor = f.normalized_anchor;
    ch.persistent = true;
    out.push_back(std::move(ch));
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
  return out;
}

}  // namespace pinwheel

#include "pinwheel/kernels.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pinwheel {

namespace {

constexpr long kCellUnits = 3;  // grid cell edge in tile units; tiles are at most sqrt5 wide

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 to_i128(const BigInt& v) {
  // Keep |v| < 2^62 so that differences and products stay inside __int128.
  static const BigInt limit = BigInt(1) << 62;
  if (abs(v) >= limit) throw FrameUnavailable("coordinate exceeds the integer frame");
  return static_cast<i128>(v.get_si());
}

std::uint64_t mix(i128 x, i128 y) {
  auto h = static_cast<std::uint64_t>(static_cast<long long>(x)) * 0x9E3779B97F4A7C15ULL;
  h ^= static_cast<std::uint64_t>(static_cast<long long>(y)) + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2);
  return h;
}

bool pair_predicate(const IntTriangle& x, const IntTriangle& y, CollarConvention conv) {
  return conv == CollarConvention::Closed ? closed_intersect(x, y) : share_segment(x, y);
}

Graph to_graph(const std::vector<std::vector<std::uint32_t>>& lists) {
  Graph g;
  g.offsets.reserve(lists.size() + 1);
  for (const auto& l : lists) {
    g.targets.insert(g.targets.end(), l.begin(), l.end());
    g.offsets.push_back(static_cast<std::uint32_t>(g.targets.size()));
  }
  return g;
}

}  // namespace

const char* to_string(CollarConvention c) { return c == CollarConvention::Closed ? "closed" : "edge"; }

CollarConvention collar_convention_from_string(const std::string& s) {
  if (s == "closed") return CollarConvention::Closed;
  if (s == "edge") return CollarConvention::Edge;
  throw std::invalid_argument("unknown collar convention: " + s);
}

TileIndex::TileIndex(std::span<const Tile> tiles, std::span<const ExactScalar> extra_points) {
  const std::size_t n = tiles.size();
  std::vector<TriangleVertices> exact(n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    exact[static_cast<std::size_t>(i)] = tiles[static_cast<std::size_t>(i)].vertices();
  }

  scale_ = 1;
  auto absorb = [this](const ExactScalar& z) {
    if (!z.in_gaussian_rationals()) throw FrameUnavailable("coordinate outside Q(i)");
    mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), z.c1().get_den_mpz_t());
    mpz_lcm(scale_.get_mpz_t(), scale_.get_mpz_t(), z.c2().get_den_mpz_t());
  };
  for (const auto& tri : exact) {
    for (const auto& z : tri) absorb(z);
  }
  for (const auto& z : extra_points) absorb(z);
  cell_ = to_i128(scale_) * kCellUnits;

  verts_.resize(n);
  tris_.resize(n);
  chir_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) verts_[i][k] = map(exact[i][k]);
    tris_[i] = ccw(IntTriangle{verts_[i][0], verts_[i][1], verts_[i][2]});
    chir_[i] = tiles[i].chirality;
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& t = tris_[i];
    i128 x0 = t[0].x, x1 = t[0].x, y0 = t[0].y, y1 = t[0].y;
    for (const auto& p : t) {
      x0 = std::min(x0, p.x);
      x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y);
      y1 = std::max(y1, p.y);
    }
    for (i128 cx = floor_div(x0, cell_); cx <= floor_div(x1, cell_); ++cx) {
      for (i128 cy = floor_div(y0, cell_); cy <= floor_div(y1, cell_); ++cy) {
        grid_[cell_key(cx, cy)].push_back(static_cast<std::uint32_t>(i));
      }
    }
    by_right_vertex_[mix(verts_[i][0].x, verts_[i][0].y)].push_back(static_cast<std::uint32_t>(i));
  }
}

IntPoint TileIndex::map(const ExactScalar& z) const {
  if (!z.in_gaussian_rationals()) throw FrameUnavailable("coordinate outside Q(i)");
  auto scaled = [this](const Rational& q) {
    if (!mpz_divisible_p(scale_.get_mpz_t(), q.get_den_mpz_t())) {
      throw FrameUnavailable("denominator not covered by the frame");
    }
    BigInt v = q.get_num() * (scale_ / q.get_den());
    return to_i128(v);
  };
  return {scaled(z.c1()), scaled(z.c2())};
}

std::uint64_t TileIndex::cell_key(i128 cx, i128 cy) const {
  const auto ux = static_cast<std::uint32_t>(static_cast<std::int32_t>(cx));
  const auto uy = static_cast<std::uint32_t>(static_cast<std::int32_t>(cy));
  return (static_cast<std::uint64_t>(ux) << 32) | uy;
}

std::vector<std::uint32_t> TileIndex::candidates(std::size_t i) const {
  const auto& t = tris_[i];
  i128 x0 = t[0].x, x1 = t[0].x, y0 = t[0].y, y1 = t[0].y;
  for (const auto& p : t) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  std::vector<std::uint32_t> out;
  for (i128 cx = floor_div(x0, cell_); cx <= floor_div(x1, cell_); ++cx) {
    for (i128 cy = floor_div(y0, cell_); cy <= floor_div(y1, cell_); ++cy) {
      auto it = grid_.find(cell_key(cx, cy));
      if (it != grid_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  out.erase(std::remove(out.begin(), out.end(), static_cast<std::uint32_t>(i)), out.end());
  return out;
}

Graph TileIndex::adjacency(CollarConvention conv) const {
  const std::size_t n = tris_.size();
  std::vector<std::vector<std::uint32_t>> lists(n);
#pragma omp parallel for schedule(dynamic, 256)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto i = static_cast<std::size_t>(si);
    for (std::uint32_t j : candidates(i)) {
      if (pair_predicate(tris_[i], tris_[j], conv)) lists[i].push_back(j);
    }
  }
  return to_graph(lists);
}

std::vector<std::uint32_t> TileIndex::tiles_containing(const IntPoint& p) const {
  std::vector<std::uint32_t> out;
  auto it = grid_.find(cell_key(floor_div(p.x, cell_), floor_div(p.y, cell_)));
  if (it == grid_.end()) return out;
  for (std::uint32_t j : it->second) {
    if (in_closed_triangle(p, tris_[j])) out.push_back(j);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::uint32_t> TileIndex::find(Chirality c, const IntPoint& right,
                                             const IntPoint& long_end) const {
  auto it = by_right_vertex_.find(mix(right.x, right.y));
  if (it == by_right_vertex_.end()) return std::nullopt;
  for (std::uint32_t j : it->second) {
    if (chir_[j] == c && verts_[j][0] == right && verts_[j][2] == long_end) return j;
  }
  return std::nullopt;
}

std::vector<bool> TileIndex::touches_outline() const {
  // Angles are a * (pi/2) + b * alpha with alpha = atan(1/2), and pi/alpha is
  // irrational, so a full turn is exactly (4, 0).
  std::vector<bool> out(tris_.size(), false);
  std::unordered_map<std::uint64_t, std::vector<IntPoint>> seen;
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    for (const auto& v : verts_[i]) {
      auto& bucket = seen[mix(v.x, v.y)];
      if (std::find(bucket.begin(), bucket.end(), v) != bucket.end()) continue;
      bucket.push_back(v);
      const auto around = tiles_containing(v);
      int quarter = 0, alpha = 0;
      for (std::uint32_t j : around) {
        const auto& w = verts_[j];
        if (v == w[0]) {
          quarter += 1;
        } else if (v == w[1]) {
          quarter += 1;
          alpha -= 1;
        } else if (v == w[2]) {
          alpha += 1;
        } else {
          quarter += 2;
        }
      }
      if (quarter != 4 || alpha != 0) {
        for (std::uint32_t j : around) out[j] = true;
      }
    }
  }
  return out;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> TileIndex::first_overlap() const {
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    for (std::uint32_t j : candidates(i)) {
      if (j > i && !interiors_disjoint(tris_[i], tris_[j])) {
        return std::make_pair(static_cast<std::uint32_t>(i), j);
      }
    }
  }
  return std::nullopt;
}

Graph adjacency_reference(std::span<const Tile> tiles, CollarConvention conv) {
  const std::size_t n = tiles.size();
  std::vector<Triangle<RealQ5>> tris;
  tris.reserve(n);
  for (const auto& t : tiles) tris.push_back(ccw(to_points(t.vertices())));
  std::vector<std::vector<std::uint32_t>> lists(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool hit = conv == CollarConvention::Closed ? closed_intersect(tris[i], tris[j])
                                                        : share_segment(tris[i], tris[j]);
      if (hit) {
        lists[i].push_back(static_cast<std::uint32_t>(j));
        lists[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  for (auto& l : lists) std::sort(l.begin(), l.end());
  return to_graph(lists);
}

Graph adjacency(std::span<const Tile> tiles, CollarConvention conv) {
  try {
    return TileIndex(tiles).adjacency(conv);
  } catch (const FrameUnavailable&) {
    return adjacency_reference(tiles, conv);
  }
}

std::vector<std::uint32_t> grow(const Graph& g, std::span<const std::uint32_t> seeds, int n,
                                std::vector<int>* layer_of) {
  std::unordered_map<std::uint32_t, int> layer;
  std::deque<std::uint32_t> queue;
  for (std::uint32_t s : seeds) {
    if (layer.emplace(s, 0).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    const int d = layer[v];
    if (d >= n) continue;
    for (std::uint32_t w : g.neighbors(v)) {
      if (layer.emplace(w, d + 1).second) queue.push_back(w);
    }
  }
  std::vector<std::uint32_t> out;
  out.reserve(layer.size());
  for (const auto& [v, d] : layer) out.push_back(v);
  std::sort(out.begin(), out.end());
  if (layer_of) {
    layer_of->clear();
    for (std::uint32_t v : out) layer_of->push_back(layer[v]);
  }
  return out;
}

}  // namespace pinwheel

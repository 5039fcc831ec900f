#include "pinwheel/frequencies.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string_view>

namespace pinwheel {

namespace {

std::vector<Tile> subdivide(std::span<const Tile> tiles) {
  std::vector<Tile> out;
  out.reserve(tiles.size() * 5);
  for (const auto& t : tiles) {
    for (const auto& c : inflate(t)) out.push_back(c);
  }
  return out;
}

std::size_t position_of(std::span<const std::uint32_t> sorted, std::uint32_t v) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

Patch select(std::span<const Tile> tiles, std::span<const std::uint32_t> which) {
  Patch p;
  p.tiles.reserve(which.size());
  for (auto j : which) p.tiles.push_back(tiles[j]);
  return p;
}

// Tile texts of an anchored key, already sorted.
std::vector<std::string_view> key_tiles(const CanonicalKey& k) {
  std::vector<std::string_view> out;
  std::string_view s(k.text);
  s.remove_prefix(2);  // chirality marker and '|'
  while (!s.empty()) {
    const auto cut = s.find(';');
    out.push_back(s.substr(0, cut));
    if (cut == std::string_view::npos) break;
    s.remove_prefix(cut + 1);
  }
  return out;
}

using Bits = std::vector<std::uint64_t>;

std::vector<Bits> boolean_product(const std::vector<Bits>& a, const std::vector<Bits>& b) {
  const std::size_t n = a.size();
  std::vector<Bits> c(n, Bits(b.front().size(), 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      if (!(a[i][l / 64] >> (l % 64) & 1)) continue;
      for (std::size_t w = 0; w < c[i].size(); ++w) c[i][w] |= b[l][w];
    }
  }
  return c;
}

bool all_positive(const std::vector<Bits>& m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(row[j / 64] >> (j % 64) & 1)) return false;
    }
  }
  return true;
}

PerronData perron_from(const IntMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix a(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]) - (i == j ? 5 : 0);
  }
  const RatMatrix kernel = rational_kernel(a, n);
  PerronData d;
  d.kernel_dimension = kernel.size();
  if (kernel.size() != 1) {
    throw KernelDimensionError("kernel of M - 5I has dimension " + std::to_string(kernel.size()) +
                               ", expected 1 (collaring too coarse or matrix reducible)");
  }
  Rational total = 0;
  for (const auto& x : kernel[0]) total += x;
  d.vector = kernel[0];
  for (auto& x : d.vector) x /= total;
  d.positive = std::all_of(d.vector.begin(), d.vector.end(), [](const Rational& x) { return sgn(x) > 0; });
  d.eigen_identity = true;
  for (std::size_t i = 0; i < n && d.eigen_identity; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j) row += Rational(m[i][j]) * d.vector[j];
    d.eigen_identity = row == 5 * d.vector[i];
  }
  return d;
}

}  // namespace

std::uint64_t SubstitutionMatrix::column_sum(std::size_t col) const {
  std::uint64_t s = 0;
  for (const auto& row : entries) s += row[col];
  return s;
}

IntMatrix SubstitutionMatrix::to_int() const {
  IntMatrix m(size(), std::vector<BigInt>(size()));
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) m[i][j] = entries[i][j];
  }
  return m;
}

SubstitutionMatrix build_substitution_matrix(std::span<const CollaredClass> classes, int radius,
                                             CollarConvention conv) {
  SubstitutionMatrix m;
  m.radius = radius;
  m.convention = conv;
  std::map<CanonicalKey, std::size_t> row_of;
  for (const auto& c : classes) {
    row_of.emplace(c.key, m.classes.size());
    m.classes.push_back(c.key);
  }
  const std::size_t n = classes.size();
  m.entries.assign(n, std::vector<std::uint32_t>(n, 0));
  std::vector<std::string> errors(n);

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t sc = 0; sc < static_cast<std::ptrdiff_t>(n); ++sc) {
    const auto col = static_cast<std::size_t>(sc);
    const auto& cls = classes[col];
    const auto children = subdivide(cls.tiles);
    const TileIndex index(children);
    const Graph g = index.adjacency(conv);
    for (std::uint32_t k = 0; k < 5; ++k) {
      const auto child = static_cast<std::uint32_t>(cls.center * 5 + k);
      const std::uint32_t seed[] = {child};
      const auto corona = grow(g, seed, radius);
      const auto key = canonicalize_anchored(select(children, corona), position_of(corona, child)).key;
      const auto it = row_of.find(key);
      if (it == row_of.end()) {
        errors[col] = "child " + std::to_string(k) + " of class " + cls.key.hash_hex() + " has a " +
                      std::to_string(radius) + "-collared class outside the catalogue";
        break;
      }
      ++m.entries[it->second][col];
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw UncollarableChild(e);
  }
  return m;
}

Primitivity primitivity(const SubstitutionMatrix& m) {
  const std::size_t n = m.size();
  Primitivity p;
  if (n == 0) return p;
  const std::size_t words = (n + 63) / 64;
  std::vector<Bits> b(n, Bits(words, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m.entries[i][j]) b[i][j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }
  // positivity of a power >= Wielandt's bound decides primitivity
  const std::uint64_t bound = static_cast<std::uint64_t>(n - 1) * (n - 1) + 1;
  auto sq = b;
  for (std::uint64_t e = 1; e < bound; e *= 2) sq = boolean_product(sq, sq);
  if (!all_positive(sq)) return p;
  p.primitive = true;
  auto power = b;
  p.exponent = 1;
  while (!all_positive(power)) {
    power = boolean_product(power, b);
    ++p.exponent;
  }
  return p;
}

ChiralityMatrix chirality_matrix() {
  ChiralityMatrix m{};
  const auto& rule = subdivision_rule();
  for (Chirality c : {Chirality::Minus, Chirality::Plus}) {
    for (const auto& piece : rule.pieces(c)) ++m[static_cast<int>(piece.chirality)][static_cast<int>(c)];
  }
  return m;
}

ChiralityMatrix collapse_by_chirality(const SubstitutionMatrix& m, std::span<const CollaredClass> classes) {
  std::array<std::optional<std::array<std::uint32_t, 2>>, 2> seen;
  for (std::size_t col = 0; col < m.size(); ++col) {
    std::array<std::uint32_t, 2> sums{};
    for (std::size_t row = 0; row < m.size(); ++row) {
      sums[static_cast<int>(classes[row].chirality())] += m.entries[row][col];
    }
    auto& slot = seen[static_cast<int>(classes[col].chirality())];
    if (slot && *slot != sums) throw std::logic_error("collared columns of one chirality disagree");
    slot = sums;
  }
  ChiralityMatrix out{};
  for (int c = 0; c < 2; ++c) {
    if (!seen[c]) throw std::logic_error("a chirality has no collared class");
    for (int r = 0; r < 2; ++r) out[r][c] = (*seen[c])[r];
  }
  return out;
}

PerronData perron_data(const SubstitutionMatrix& m) { return perron_from(m.to_int()); }

PerronData perron_data(const ChiralityMatrix& m) {
  IntMatrix a(2, std::vector<BigInt>(2));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a[i][j] = m[i][j];
  }
  return perron_from(a);
}

std::optional<std::size_t> FrequencyTable::find(const CanonicalKey& k) const {
  auto it = std::lower_bound(classes.begin(), classes.end(), k,
                             [](const CollaredClass& c, const CanonicalKey& key) { return c.key < key; });
  if (it == classes.end() || !(it->key == k)) return std::nullopt;
  return static_cast<std::size_t>(it - classes.begin());
}

FrequencyTable collared_frequencies(std::span<const CollaredClass> classes, const PerronData& perron,
                                    CollarConvention conv) {
  if (perron.vector.size() != classes.size()) throw std::invalid_argument("Perron vector size mismatch");
  FrequencyTable t;
  t.radius = 1;
  t.convention = conv;
  std::vector<std::size_t> order(classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return classes[x].key < classes[y].key; });
  for (auto i : order) {
    t.classes.push_back(classes[i]);
    t.frequency.push_back(perron.vector[i]);
  }
  return t;
}

FrequencyTable lift_frequencies(const FrequencyTable& base, int radius, int max_subdivisions) {
  if (base.radius != 1 || base.convention != CollarConvention::Closed) {
    throw std::invalid_argument("lifting starts from 1-collared frequencies under the closed convention");
  }
  struct Found {
    std::map<CanonicalKey, std::pair<std::uint64_t, CollaredClass>> classes;
    int depth = 0;
    std::string error;
  };
  const std::size_t n = base.classes.size();
  std::vector<Found> found(n);

  // One depth for every class: the ancestors k levels up partition the tiles
  // only when k is the same everywhere.
  auto attempt = [&](std::size_t c1, int k) {
    const auto& cls = base.classes[c1];
    std::vector<Tile> tiles = cls.tiles;
    std::size_t first = cls.center, count = 1;
    for (int j = 0; j < k; ++j) {
      tiles = subdivide(tiles);
      first *= 5;
      count *= 5;
    }
    const TileIndex index(tiles);
    const auto outline = index.touches_outline();
    const Graph g = index.adjacency(CollarConvention::Closed);
    Found local;
    local.depth = k;
    for (std::size_t d = first; d < first + count; ++d) {
      const std::uint32_t seed[] = {static_cast<std::uint32_t>(d)};
      std::vector<int> layer;
      const auto corona = grow(g, seed, radius, &layer);
      for (std::size_t q = 0; q < corona.size(); ++q) {
        if (layer[q] < radius && outline[corona[q]]) {
          local.error = "class " + cls.key.hash_hex() + " cannot collar its descendants after " +
                        std::to_string(k) + " subdivisions";
          return local;
        }
      }
      auto form = canonicalize_anchored(select(tiles, corona), position_of(corona, seed[0]));
      auto it = local.classes.find(form.key);
      if (it == local.classes.end()) {
        CollaredClass c;
        c.key = form.key;
        c.tiles = std::move(form.normalized);
        c.center = form.normalized_anchor;
        it = local.classes.emplace(c.key, std::make_pair(std::uint64_t{0}, std::move(c))).first;
      }
      ++it->second.first;
    }
    return local;
  };

  int depth = 1;
  for (;; ++depth) {
    if (depth > max_subdivisions) {
      throw PatchTooLarge("collaring radius " + std::to_string(radius) + " needs more than " +
                          std::to_string(max_subdivisions) + " subdivisions");
    }
    bool complete = true;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
      found[static_cast<std::size_t>(si)] = attempt(static_cast<std::size_t>(si), depth);
    }
    for (const auto& f : found) complete = complete && f.error.empty();
    if (complete) break;
  }

  FrequencyTable t;
  t.radius = radius;
  t.convention = CollarConvention::Closed;
  std::map<CanonicalKey, std::pair<Rational, CollaredClass>> merged;
  for (std::size_t c1 = 0; c1 < n; ++c1) {
    t.subdivision_depth = depth;
    BigInt scale = 1;
    for (int k = 0; k < found[c1].depth; ++k) scale *= 5;
    for (auto& [key, entry] : found[c1].classes) {
      const Rational w = base.frequency[c1] * Rational(BigInt(static_cast<unsigned long>(entry.first)), scale);
      auto it = merged.find(key);
      if (it == merged.end()) {
        entry.second.count = entry.first;
        merged.emplace(key, std::make_pair(w, std::move(entry.second)));
      } else {
        it->second.first += w;
        it->second.second.count += entry.first;
      }
    }
  }
  for (auto& [key, entry] : merged) {
    t.frequency.push_back(entry.first);
    t.classes.push_back(std::move(entry.second));
  }
  return t;
}

EigenCheck verify_table(const FrequencyTable& t, const SubstitutionMatrix& m) {
  EigenCheck e;
  if (m.size() != t.classes.size()) return e;
  e.column_sums = true;
  for (std::size_t c = 0; c < m.size(); ++c) e.column_sums = e.column_sums && m.column_sum(c) == 5;
  Rational total = 0;
  e.positive = true;
  for (const auto& f : t.frequency) {
    total += f;
    e.positive = e.positive && sgn(f) > 0;
  }
  e.normalized = total == 1;
  e.eigen_identity = true;
  for (std::size_t i = 0; i < m.size() && e.eigen_identity; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (m.entries[i][j]) row += Rational(m.entries[i][j]) * t.frequency[j];
    }
    e.eigen_identity = row == 5 * t.frequency[i];
  }
  return e;
}

int patch_radius(const Patch& p, std::size_t anchor) {
  const Graph g = adjacency(p.tiles, CollarConvention::Closed);
  std::vector<int> dist(p.tiles.size(), -1);
  std::deque<std::size_t> queue{anchor};
  dist[anchor] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (std::find(dist.begin(), dist.end(), -1) != dist.end()) {
    throw std::invalid_argument("patch is not connected");
  }
  return *std::max_element(dist.begin(), dist.end());
}

PatchFrequency patch_frequency(const Patch& p, std::size_t anchor, std::span<const FrequencyTable> tables) {
  const int r = std::max(1, patch_radius(p, anchor));
  if (static_cast<std::size_t>(r) > tables.size()) {
    throw PatchTooLarge("patch has radius " + std::to_string(r) + " about its anchor; frequencies of " +
                        std::to_string(r) + "-collared classes are required");
  }
  const auto form = canonicalize_anchored(p, anchor);
  const auto wanted = key_tiles(form.key);
  const Chirality c = p.tiles[anchor].chirality;
  auto evaluate = [&](const FrequencyTable& t) {
    Rational sum = 0;
    for (std::size_t i = 0; i < t.classes.size(); ++i) {
      if (t.classes[i].chirality() != c) continue;
      const auto have = key_tiles(t.classes[i].key);
      if (std::includes(have.begin(), have.end(), wanted.begin(), wanted.end())) sum += t.frequency[i];
    }
    return sum;
  };
  PatchFrequency out;
  out.radius_used = r;
  out.value = evaluate(tables[static_cast<std::size_t>(r - 1)]);
  if (static_cast<std::size_t>(r) < tables.size()) {
    out.agrees_with_next = evaluate(tables[static_cast<std::size_t>(r)]) == out.value;
  }
  return out;
}

std::optional<int> module_exponent(const Rational& f, int max_k) {
  Rational x = f * 264;
  for (int k = 0; k <= max_k; ++k) {
    if (x.get_den() == 1) return k;
    x *= 5;
  }
  return std::nullopt;
}

Rational module_generator(std::span<const Rational> values) {
  BigInt num = 0, den = 1;
  for (const auto& v : values) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), v.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  }
  Rational g(num, den);
  g.canonicalize();
  return g;
}

bool ModuleReport::all_members() const {
  return std::all_of(entries.begin(), entries.end(), [](const ModuleEntry& e) { return e.in_module(); });
}

ModuleReport frequency_module_report(std::span<const FrequencyTable> tables,
                                     std::span<const VertexCoronaClass> vertex_classes,
                                     const StarDynamics& stars, int depth) {
  if (depth < 1) throw std::invalid_argument("module depth must be at least 1");
  if (tables.size() < static_cast<std::size_t>(depth)) throw PatchTooLarge("frequency tables do not reach the requested depth");
  ModuleReport rep;
  rep.depth = depth;
  const auto available = tables.first(static_cast<std::size_t>(depth));
  auto add = [&](std::string kind, CanonicalKey key, Rational f) {
    ModuleEntry e{std::move(kind), std::move(key), f, module_exponent(f)};
    rep.entries.push_back(std::move(e));
  };
  for (int r = 1; r <= depth; ++r) {
    const auto& t = tables[static_cast<std::size_t>(r - 1)];
    for (std::size_t i = 0; i < t.classes.size(); ++i) add("collared-" + std::to_string(r), t.classes[i].key, t.frequency[i]);
  }
  for (const auto& v : vertex_classes) {
    const auto form = canonicalize(v.patch);
    Patch p{form.normalized, {}};
    add("vertex-corona", v.key, patch_frequency(p, form.normalized_anchor, available).value);
  }
  if (depth >= 2) {
    for (const auto& ch : symmetric_tiling_coronas(stars, 1)) {
      add("symmetric-corona", ch.key, patch_frequency(ch.patch, ch.anchor, available).value);
    }
  }
  std::vector<Rational> values;
  for (const auto& e : rep.entries) values.push_back(e.frequency);
  rep.generator = module_generator(values);
  return rep;
}

OccurrenceCount count_occurrences(const Context& ctx, const Patch& p, std::size_t anchor) {
  if (ctx.convention() != CollarConvention::Closed) {
    throw std::invalid_argument("occurrence counting needs a closed-convention context");
  }
  const int r = patch_radius(p, anchor);
  const auto form = canonicalize_anchored(p, anchor);
  const Chirality anchor_chirality = p.tiles[anchor].chirality;

  // normalized right-angle and long-leg vertices over a common denominator
  BigInt den = 1;
  for (const auto& t : form.normalized) {
    const auto v = t.vertices();
    for (const auto& z : {v[0], v[2]}) {
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), z.c1().get_den_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), z.c2().get_den_mpz_t());
    }
  }
  struct Scaled {
    Chirality c;
    i128 rx, ry, lx, ly;
  };
  std::vector<Scaled> pattern;
  auto scaled = [&](const Rational& q) { return static_cast<i128>(BigInt(q.get_num() * (den / q.get_den())).get_si()); };
  for (const auto& t : form.normalized) {
    const auto v = t.vertices();
    pattern.push_back({t.chirality, scaled(v[0].c1()), scaled(v[0].c2()), scaled(v[2].c1()), scaled(v[2].c2())});
  }
  const i128 d2 = static_cast<i128>(den.get_si()) * 2;

  const auto& idx = ctx.index();
  const std::size_t n = idx.size();
  std::uint64_t occurrences = 0;
#pragma omp parallel for schedule(static) reduction(+ : occurrences)
  for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n); ++si) {
    const auto t = static_cast<std::size_t>(si);
    if (idx.chirality(t) != anchor_chirality) continue;
    // z -> R + z (L - R) / 2 places the standard pose on tile t
    const IntPoint rt = idx.vertices(t)[0];
    const IntPoint w = idx.vertices(t)[2] - rt;
    auto place = [&](i128 x, i128 y, IntPoint& out) {
      const i128 px = x * w.x - y * w.y, py = x * w.y + y * w.x;
      if (px % d2 != 0 || py % d2 != 0) return false;
      out = {rt.x + px / d2, rt.y + py / d2};
      return true;
    };
    bool all = true;
    for (const auto& s : pattern) {
      IntPoint a, b;
      if (!place(s.rx, s.ry, a) || !place(s.lx, s.ly, b) || !idx.find(s.c, a, b)) {
        all = false;
        break;
      }
    }
    if (all) ++occurrences;
  }

  // tiles within r steps of a boundary tile may have occurrences cut by the outline
  std::vector<int> dist(n, -1);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (ctx.is_boundary(i)) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (dist[v] + 1 >= r) continue;
    for (auto u : ctx.graph().neighbors(v)) {
      if (dist[u] < 0) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  OccurrenceCount oc;
  oc.level = ctx.level();
  oc.tiles = n;
  oc.occurrences = occurrences;
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i] >= 0 && dist[i] < r && idx.chirality(i) == anchor_chirality) ++oc.uncertain;
  }
  return oc;
}

}  // namespace pinwheel

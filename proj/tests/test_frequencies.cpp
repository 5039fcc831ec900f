#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "pinwheel/ktheory.hpp"

using namespace pinwheel;

namespace {

struct Fixture {
  Context ctx{6};
  Context witness{7};
  std::vector<CollaredClass> classes = collared_classes(witness, 1);
  SubstitutionMatrix matrix = build_substitution_matrix(classes, 1, CollarConvention::Closed);
  PerronData perron = perron_data(matrix);
  std::vector<FrequencyTable> tables;
  StarDynamics stars = symmetric_star_dynamics(ctx);
  std::vector<VertexCoronaClass> vertex = vertex_coronas(ctx);

  Fixture() {
    tables.push_back(collared_frequencies(classes, perron, CollarConvention::Closed));
    tables.push_back(lift_frequencies(tables.front(), 2));
  }
};

const Fixture& fx() {
  static const Fixture f;
  return f;
}

Rational sum(std::span<const Rational> v) {
  Rational s = 0;
  for (const auto& x : v) s += x;
  return s;
}

}  // namespace

TEST_CASE("substitution matrix: column sums, chirality collapse, primitivity") {
  const auto& f = fx();
  REQUIRE(f.matrix.size() == f.classes.size());
  for (std::size_t c = 0; c < f.matrix.size(); ++c) CHECK(f.matrix.column_sum(c) == 5);
  // chirality counts read straight off the subdivided prototiles
  ChiralityMatrix direct{};
  for (auto ch : {Chirality::Minus, Chirality::Plus}) {
    for (const auto& k : inflate(Tile{ch, RigidMotion::identity()})) {
      ++direct[static_cast<int>(k.chirality)][static_cast<int>(ch)];
    }
  }
  CHECK(direct == ChiralityMatrix{{{2, 3}, {3, 2}}});
  CHECK(chirality_matrix() == direct);
  CHECK(collapse_by_chirality(f.matrix, f.classes) == direct);
  const auto p = primitivity(f.matrix);
  CHECK(p.primitive);
  CHECK(p.exponent >= 1);
  const auto chi = perron_data(direct);
  CHECK(chi.vector == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("Perron vector: M v = 5 v, normalized, positive, unique") {
  const auto& f = fx();
  const auto& v = f.perron.vector;
  CHECK(f.perron.kernel_dimension == 1);
  CHECK(sum(v) == 1);
  for (std::size_t r = 0; r < v.size(); ++r) {
    CHECK(v[r] > 0);
    Rational s = 0;
    for (std::size_t c = 0; c < v.size(); ++c) s += Rational(f.matrix.entries[r][c]) * v[c];
    CHECK(s == 5 * v[r]);
  }
  CHECK(verify_table(f.tables.front(), f.matrix).ok());
}

TEST_CASE("collared frequencies: chirality halves and keys") {
  const auto& f = fx();
  const auto& t = f.tables.front();
  Rational minus = 0;
  for (std::size_t i = 0; i < t.classes.size(); ++i) {
    if (t.classes[i].chirality() == Chirality::Minus) minus += t.frequency[i];
    const Patch p{t.classes[i].tiles, {}};
    CHECK(canonicalize_anchored(p, t.classes[i].center).key == t.classes[i].key);
  }
  CHECK(minus == Rational(1, 2));
  CHECK(sum(t.frequency) == 1);
  const Patch single{{Tile{Chirality::Minus, RigidMotion::identity()}}, {}};
  CHECK(patch_frequency(single, 0, f.tables).value == Rational(1, 2));
  CHECK(patch_frequency(mirror(single), 0, f.tables).value == Rational(1, 2));
}

TEST_CASE("2-collared frequencies restrict to 1-collared ones") {
  const auto& f = fx();
  const auto& t1 = f.tables[0];
  const auto& t2 = f.tables[1];
  CHECK(sum(t2.frequency) == 1);
  std::map<std::string, Rational> restricted;
  for (std::size_t i = 0; i < t2.classes.size(); ++i) {
    const auto& k = t2.classes[i];
    CHECK(t2.frequency[i] > 0);
    const auto g = adjacency(k.tiles, CollarConvention::Closed);
    const std::vector<std::uint32_t> seed{static_cast<std::uint32_t>(k.center)};
    const auto inner = grow(g, seed, 1);
    Patch sub;
    std::size_t anchor = 0;
    for (auto j : inner) {
      if (j == k.center) anchor = sub.tiles.size();
      sub.tiles.push_back(k.tiles[j]);
    }
    restricted[canonicalize_anchored(sub, anchor).key.text] += t2.frequency[i];
  }
  CHECK(restricted.size() == t1.classes.size());
  for (std::size_t i = 0; i < t1.classes.size(); ++i) CHECK(restricted[t1.classes[i].key.text] == t1.frequency[i]);
}

TEST_CASE("module exponent and generator") {
  CHECK(module_exponent(Rational(1, 264)) == 0);
  CHECK(module_exponent(Rational(1, 2)) == 0);
  CHECK(module_exponent(Rational(7, 264 * 25)) == 2);
  CHECK_FALSE(module_exponent(Rational(1, 7)).has_value());
  CHECK_FALSE(module_exponent(Rational(1, 264 * 625), 3).has_value());
  const std::vector<Rational> a{Rational(1, 2), Rational(1, 3)};
  CHECK(module_generator(a) == Rational(1, 6));
  const std::vector<Rational> b{Rational(2, 3), Rational(4, 9)};
  CHECK(module_generator(b) == Rational(2, 9));
  const auto rep = frequency_module_report(fx().tables, fx().vertex, fx().stars, 2);
  CHECK(rep.all_members());
  for (const auto& e : rep.entries) {
    const Rational m = e.frequency / rep.generator;
    CHECK(Rational(m).get_den() == 1);
  }
}

TEST_CASE("occurrence counts agree with a naive scan and approach the frequencies") {
  const auto& f = fx();
  const Context c5(5);
  const auto& t = f.tables.front();
  std::size_t checked = 0;
  for (std::size_t i = 0; i < t.classes.size(); i += 9) {
    const Patch p{t.classes[i].tiles, {}};
    const auto anchor = t.classes[i].center;
    const auto n5 = count_occurrences(c5, p, anchor);
    CHECK(n5.occurrences == oracle::naive_occurrences(c5.supertile().tiles, p, anchor));
    const auto n6 = count_occurrences(f.ctx, p, anchor);
    CHECK(n6.occurrences == oracle::naive_occurrences(f.ctx.supertile().tiles, p, anchor));
    const Rational err = abs(n6.density() - t.frequency[i]);
    CHECK(err <= n6.boundary_bound());
    ++checked;
  }
  CHECK(checked >= 5);
}

TEST_CASE("trace pairing on the symmetric tilings") {
  const auto& f = fx();
  const auto rep = frequency_module_report(f.tables, f.vertex, f.stars, 2);
  const PairingInputs in{f.tables, rep.generator};
  const auto chains = symmetric_tiling_coronas(f.stars, 1);
  CHECK(chains.size() == 6);
  WindingLoop loop;
  WindingLoop back;
  back.reversed = true;
  for (const auto& ch : chains) {
    const auto v = trace_pairing(ch, loop, in);
    CHECK(v.l == 1);
    CHECK(v.value == v.l * v.frequency);
    CHECK(v.frequency == patch_frequency(ch.patch, ch.anchor, f.tables).value);
    CHECK(v.in_module());
    CHECK(trace_pairing(ch, back, in).value == -v.value);
  }
}

#include "pinwheel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

namespace pinwheel {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    default: return "undecided-at-budget";
  }
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"cover",  "collared", "chirality", "perron",   "module",
                                              "oracle", "kernel",   "symmetry",  "pairing", "canonical"};
  return names;
}

Json to_json(const Check& c, bool timings) {
  Json j{{"suite", c.suite}, {"name", c.name}, {"status", to_string(c.status)}, {"details", c.details}};
  if (!c.witness.is_null()) j["witness"] = c.witness;
  if (timings) j["seconds"] = c.seconds;
  return j;
}

namespace {

// Expensive shared inputs, built on first use.
class Workspace {
 public:
  explicit Workspace(const VerifyConfig& cfg) : cfg_(cfg) {}

  const Context& context(int level) {
    auto& slot = contexts_[level];
    if (!slot) slot = std::make_unique<Context>(level);
    return *slot;
  }
  const std::vector<CollaredClass>& classes(int level) {
    auto it = classes_.find(level);
    if (it == classes_.end()) it = classes_.emplace(level, collared_classes(context(level), 1)).first;
    return it->second;
  }
  const std::vector<CollaredClass>& catalogue() { return classes(cfg_.collar_level + 1); }
  const SubstitutionMatrix& matrix() {
    if (!matrix_) matrix_ = build_substitution_matrix(catalogue(), 1, CollarConvention::Closed);
    return *matrix_;
  }
  const PerronData& perron() {
    if (!perron_) perron_ = perron_data(matrix());
    return *perron_;
  }
  const std::vector<FrequencyTable>& tables() {
    if (tables_.empty()) {
      tables_.push_back(collared_frequencies(catalogue(), perron(), CollarConvention::Closed));
      for (int r = 2; r <= std::max(2, cfg_.depth); ++r) tables_.push_back(lift_frequencies(tables_.front(), r));
    }
    return tables_;
  }
  const StarDynamics& stars() {
    if (!stars_) stars_ = symmetric_star_dynamics(context(cfg_.collar_level));
    return *stars_;
  }
  const std::vector<VertexCoronaClass>& vertex_classes() {
    if (!vertex_) vertex_ = vertex_coronas(context(cfg_.collar_level));
    return *vertex_;
  }
  const ModuleReport& module() {
    if (!module_) module_ = frequency_module_report(tables(), vertex_classes(), stars(), cfg_.depth);
    return *module_;
  }

 private:
  const VerifyConfig& cfg_;
  std::map<int, std::unique_ptr<Context>> contexts_;
  std::map<int, std::vector<CollaredClass>> classes_;
  std::optional<SubstitutionMatrix> matrix_;
  std::optional<PerronData> perron_;
  std::vector<FrequencyTable> tables_;
  std::optional<StarDynamics> stars_;
  std::optional<std::vector<VertexCoronaClass>> vertex_;
  std::optional<ModuleReport> module_;
};

Check make(std::string suite, std::string name) {
  Check c;
  c.suite = std::move(suite);
  c.name = std::move(name);
  return c;
}

Status pass_if(bool ok) { return ok ? Status::Pass : Status::Fail; }

Json matrix_json(const ChiralityMatrix& m) { return Json{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}; }

RigidMotion random_motion(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> a(-8, 8), num(-40, 40), den(1, 12);
  std::uniform_int_distribution<int> b(0, 3);
  auto q = [&] { return Rational(num(rng), den(rng)); };
  RigidMotion g = RigidMotion::rotation(a(rng), b(rng));
  g.t = ExactScalar::from_components(q(), q(), q(), q());
  return g;
}

// ---- suites ----

Check cover_suite(const VerifyConfig& cfg) {
  Check c = make("cover", "exact-cover");
  const auto& rule = subdivision_rule();
  TriangleVertices outline = reference_vertices(Chirality::Minus);
  Json levels = Json::array();
  bool ok = true;
  std::uint64_t expected = 1;
  for (int n = 0; n <= cfg.cover_level; ++n) {
    const auto s = supertile(n);
    const auto check = check_cover(s.tiles, outline, expected);
    const bool outline_ok = s.outline == outline;
    levels.push_back(Json{{"level", n},
                          {"tiles", s.size()},
                          {"count", check.count_ok},
                          {"area", check.area_ok},
                          {"disjoint", check.disjoint_ok},
                          {"contained", check.contained_ok},
                          {"outline_is_inflated_seed", outline_ok}});
    if (!(check.ok() && outline_ok) && c.witness.is_null()) {
      c.witness = Json{{"level", n}, {"reason", check.witness.empty() ? "outline mismatch" : check.witness}};
    }
    ok = ok && check.ok() && outline_ok;
    for (auto& z : outline) z = rule.inflate_point(z);
    expected *= 5;
  }
  c.details["levels"] = std::move(levels);
  c.status = pass_if(ok);
  return c;
}

Check collared_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check c = make("collared", "collared-prototiles");
  const int L = cfg.collar_level;
  const auto& at = ws.classes(L);
  const auto& next = ws.classes(L + 1);
  const bool stable = at.size() == next.size() &&
                      std::equal(at.begin(), at.end(), next.begin(), [](auto& x, auto& y) { return x.key == y.key; });
  std::set<std::string> keys;
  for (const auto& k : next) keys.insert(k.key.text);
  std::size_t minus = 0, paired = 0;
  std::optional<std::string> unpaired;
  for (const auto& k : next) {
    if (k.chirality() == Chirality::Minus) ++minus;
    const Patch m = mirror(Patch{k.tiles, {}});
    if (keys.count(canonicalize_anchored(m, k.center).key.text)) {
      ++paired;
    } else if (!unpaired) {
      unpaired = k.key.hash_hex();
    }
  }
  const std::size_t pairs = paired / 2;

  const auto edge_at = collared_classes(Context(L, CollarConvention::Edge), 1);
  const auto edge_next = collared_classes(Context(L + 1, CollarConvention::Edge), 1);

  c.details = Json{{"context_level", L},
                   {"witness_level", L + 1},
                   {"closed", {{"count_at_level", at.size()}, {"count_at_next", next.size()}, {"stabilized", stable},
                               {"minus_centred", minus}, {"plus_centred", next.size() - minus},
                               {"mirror_pairs", pairs}}},
                   {"edge", {{"count_at_level", edge_at.size()}, {"count_at_next", edge_next.size()}}},
                   {"target_mirror_pairs", 54}};
  const bool ok = stable && paired == next.size() && pairs == 54;
  if (!ok) {
    c.witness = Json{{"count_at_level", at.size()}, {"count_at_next", next.size()}, {"mirror_pairs", pairs}};
    if (unpaired) c.witness["class_without_mirror"] = *unpaired;
  }
  c.status = pass_if(ok);
  return c;
}

Check chirality_suite(Workspace& ws) {
  Check c = make("chirality", "chirality-system");
  const ChiralityMatrix expected{{{2, 3}, {3, 2}}};
  const auto rule_matrix = chirality_matrix();
  const auto collapsed = collapse_by_chirality(ws.matrix(), ws.catalogue());
  const auto p = perron_data(collapsed);
  const bool half = p.vector.size() == 2 && p.vector[0] == Rational(1, 2) && p.vector[1] == Rational(1, 2);
  c.details = Json{{"rule_matrix", matrix_json(rule_matrix)},
                   {"collapsed_matrix", matrix_json(collapsed)},
                   {"perron", Json{format_rational(p.vector.at(0)), format_rational(p.vector.at(1))}},
                   {"eigen_identity", p.eigen_identity}};
  const bool ok = rule_matrix == expected && collapsed == expected && half && p.eigen_identity && p.kernel_dimension == 1;
  if (!ok) c.witness = c.details["collapsed_matrix"];
  c.status = pass_if(ok);
  return c;
}

Check perron_suite(Workspace& ws) {
  Check c = make("perron", "perron-data");
  const auto& m = ws.matrix();
  std::optional<std::size_t> bad_column;
  for (std::size_t j = 0; j < m.size() && !bad_column; ++j) {
    if (m.column_sum(j) != 5) bad_column = j;
  }
  const auto prim = primitivity(m);
  const auto& p = ws.perron();
  Rational sum = 0;
  for (const auto& v : p.vector) sum += v;
  const auto& t = ws.tables().front();
  const auto check = verify_table(t, m);
  c.details = Json{{"classes", m.size()},
                   {"column_sums_5", !bad_column},
                   {"primitive", prim.primitive},
                   {"primitivity_exponent", prim.exponent},
                   {"kernel_dimension", p.kernel_dimension},
                   {"positive", p.positive},
                   {"sum", format_rational(sum)},
                   {"eigen_identity", p.eigen_identity},
                   {"table_check", check.ok()}};
  const bool ok = !bad_column && prim.primitive && p.kernel_dimension == 1 && p.positive && sum == 1 &&
                  p.eigen_identity && check.ok();
  if (!ok) {
    c.witness = bad_column ? Json{{"column", *bad_column}, {"key", m.classes[*bad_column].hash_hex()}}
                           : Json{{"kernel_dimension", p.kernel_dimension}};
  }
  c.status = pass_if(ok);
  return c;
}

Check module_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check c = make("module", "module-membership");
  const auto& rep = ws.module();
  std::map<std::string, std::size_t> per_kind;
  for (const auto& e : rep.entries) ++per_kind[e.kind];
  c.details = to_json(rep);
  c.details["counts"] = per_kind;
  c.details["depth"] = cfg.depth;
  // monotone in depth: the depth-1 generator lies in the depth-d module
  if (cfg.depth > 1) {
    const auto shallow = frequency_module_report(ws.tables(), ws.vertex_classes(), ws.stars(), 1);
    c.details["depth_1_generator"] = format_rational(shallow.generator);
    c.details["monotone"] = Rational(shallow.generator / rep.generator).get_den() == 1;
  }
  bool ok = rep.all_members();
  if (c.details.contains("monotone")) ok = ok && c.details["monotone"].get<bool>();
  for (const auto& e : rep.entries) {
    if (!e.in_module()) {
      c.witness = Json{{"key_hash", e.key.hash_hex()}, {"freq", format_rational(e.frequency)}};
      break;
    }
  }
  c.status = pass_if(ok);
  return c;
}

Check oracle_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check c = make("oracle", "counting-oracle");
  const auto& tables = ws.tables();
  const auto& t1 = tables.front();
  // the most frequent collared class, the first vertex corona and the first symmetric 1-corona
  const auto top = static_cast<std::size_t>(std::max_element(t1.frequency.begin(), t1.frequency.end()) - t1.frequency.begin());
  std::vector<std::pair<std::string, std::pair<Patch, std::size_t>>> samples;
  samples.push_back({"collared-1", {Patch{t1.classes[top].tiles, {}}, t1.classes[top].center}});
  const auto form = canonicalize(ws.vertex_classes().front().patch);
  samples.push_back({"vertex-corona", {Patch{form.normalized, {}}, form.normalized_anchor}});
  const auto sym = symmetric_tiling_coronas(ws.stars(), 1);
  samples.push_back({"symmetric-corona", {sym.front().patch, sym.front().anchor}});

  bool ok = true;
  Json rows = Json::array();
  for (const auto& [kind, pa] : samples) {
    const auto& [patch, anchor] = pa;
    const Rational f = patch_frequency(patch, anchor, tables).value;
    Json levels = Json::array();
    std::optional<Rational> prev;
    bool decreasing = true, within = false;
    for (int n = cfg.oracle_level - 2; n <= cfg.oracle_level; ++n) {
      const auto oc = count_occurrences(ws.context(n), patch, anchor);
      const Rational delta = abs(Rational(oc.density() - f));
      if (prev && !(delta < *prev)) decreasing = false;
      prev = delta;
      within = delta <= oc.boundary_bound();
      levels.push_back(Json{{"level", n}, {"occurrences", oc.occurrences}, {"tiles", oc.tiles},
                            {"delta", delta.get_d()}, {"bound", oc.boundary_bound().get_d()}});
    }
    rows.push_back(Json{{"kind", kind}, {"freq", format_rational(f)}, {"levels", std::move(levels)},
                        {"strictly_decreasing", decreasing}, {"within_bound", within}});
    if (!(decreasing && within) && c.witness.is_null()) c.witness = rows.back();
    ok = ok && decreasing && within;
  }
  c.details["patches"] = std::move(rows);
  c.status = pass_if(ok);
  return c;
}

Check kernel_suite(const VerifyConfig& cfg) {
  Check c = make("kernel", "kernel-lattice");
  const auto start = std::chrono::steady_clock::now();
  const auto rep = verify_kernel_lattice(cfg.generators_override);
  const auto trial = criterion_equivalence(cfg.criterion_trials, cfg.seed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.details = to_json(rep);
  c.details["criterion"] = Json{{"trials", trial.trials}, {"in_kernel", trial.in_kernel}, {"disagreements", trial.disagreements}};
  c.details["under_one_second"] = secs < 1.0;
  const bool ok = rep.ok() && trial.disagreements == 0 && secs < 1.0;
  if (!ok) {
    c.witness = Json{{"generators_hnf", to_json(rep.generators_hnf)}, {"kernel_hnf", to_json(rep.kernel_hnf)}};
    if (rep.witness) c.witness["vector"] = to_json(std::span<const BigInt>(*rep.witness)), c.witness["note"] = rep.witness_note;
  }
  c.status = pass_if(ok);
  return c;
}

std::set<std::string> live_star_keys(const ChainCensus& census, const StarDynamics& stars, int n) {
  std::set<std::string> keys;
  for (std::size_t s = 0; s < stars.stars.size(); ++s) {
    if (census.star_surviving[s][static_cast<std::size_t>(n)] > 0) keys.insert(stars.stars[s].key.text);
  }
  return keys;
}

Check symmetry_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check c = make("symmetry", "symmetry");
  // first vertex coronas: symmetric ones have order exactly 2, angle pi
  std::size_t symmetric = 0;
  bool orders_ok = true;
  for (const auto& v : ws.vertex_classes()) {
    const auto rep = symmetry_group(v.patch);
    if (rep.order == 1) continue;
    ++symmetric;
    if (rep.order != 2 || rep.angle != "pi") {
      orders_ok = false;
      if (c.witness.is_null()) c.witness = Json{{"key_hash", v.key.hash_hex()}, {"order", rep.order}};
    }
  }

  const int L = cfg.census_level;
  const auto& ctx = ws.context(L);
  const auto& ctx_next = ws.context(L + 1);
  const auto dyn = symmetric_star_dynamics(ctx);
  const auto dyn_next = symmetric_star_dynamics(ctx_next);
  const auto census = symmetric_chain_census(ctx, dyn, cfg.census_depth);
  const auto census_next = symmetric_chain_census(ctx_next, dyn_next, cfg.census_depth);

  std::set<std::string> periodic;
  for (const auto& s : dyn.stars) {
    if (s.periodic) periodic.insert(s.key.text);
  }
  // budget: depths where the live stars agree with the next context level
  int budget = -1;
  for (int n = 0; n <= cfg.census_depth; ++n) {
    if (live_star_keys(census, dyn, n) != live_star_keys(census_next, dyn_next, n)) break;
    budget = n;
  }
  Json counts = Json::array(), raw = Json::array(), persistent = Json::array();
  bool six = budget >= 1, monotone = true, only_periodic = true;
  for (int n = 0; n <= cfg.census_depth; ++n) {
    const std::size_t live = census.live_stars(n);
    counts.push_back(live);
    raw.push_back(census.counts[static_cast<std::size_t>(n)]);
    persistent.push_back(census.persistent_counts[static_cast<std::size_t>(n)]);
    if (n > 0 && live > census.live_stars(n - 1)) monotone = false;
    if (n >= 1 && n <= budget) {
      six = six && live == 6;
      only_periodic = only_periodic && live_star_keys(census, dyn, n) == periodic;
    }
  }
  // the six symmetric tilings give six distinct N-coronas at every depth in the budget
  bool chains_distinct = true;
  for (int n = 1; n <= std::max(1, budget); ++n) {
    std::set<std::string> keys;
    for (const auto& ch : symmetric_tiling_coronas(dyn, n)) keys.insert(ch.key.text);
    chains_distinct = chains_distinct && keys.size() == 6;
  }
  Json next_counts = Json::array();
  for (int n = 0; n <= cfg.census_depth; ++n) next_counts.push_back(census_next.live_stars(n));

  c.details = Json{{"vertex_coronas", ws.vertex_classes().size()},
                   {"symmetric_vertex_coronas", symmetric},
                   {"orders_ok", orders_ok},
                   {"star_classes", dyn.stars.size()},
                   {"periodic_stars", dyn.periodic_count},
                   {"census_level", L},
                   {"census_counts", std::move(counts)},
                   {"census_counts_next_level", std::move(next_counts)},
                   {"budget_depth", budget},
                   {"corona_classes", std::move(raw)},
                   {"symmetric_tiling_corona_classes", std::move(persistent)},
                   {"non_increasing", monotone},
                   {"six_symmetric_tilings", chains_distinct}};
  const bool ok = orders_ok && symmetric > 0 && dyn.periodic_count == 6 && six && only_periodic && monotone && chains_distinct;
  if (!ok && c.witness.is_null()) c.witness = Json{{"census_counts", c.details["census_counts"]}, {"budget_depth", budget}};
  c.status = pass_if(ok);
  return c;
}

std::vector<Check> pairing_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check w = make("pairing", "winding-index");
  WindingLoop loop;
  loop.eps = BoundaryMap::monomial(cfg.epsilon_power);
  const long l = winding_index(loop);
  const auto integral = winding_integral(loop, 10000);
  WindingLoop back = loop;
  back.reversed = true;
  const long l_back = winding_index(back);
  w.details = Json{{"epsilon", "z^" + std::to_string(cfg.epsilon_power)},
                   {"l", l},
                   {"integral", integral.value},
                   {"residual", integral.residual},
                   {"reversed_l", l_back}};
  const bool wok = integral.rounded == l && integral.residual < 1e-6 && l_back == -l && (cfg.epsilon_power != 2 || l == 1);
  if (!wok) w.witness = w.details;
  w.status = pass_if(wok);

  Check p = make("pairing", "trace-pairing");
  PairingInputs in{ws.tables(), ws.module().generator};
  Json values = Json::array();
  std::vector<PairingValue> pairings;
  bool pok = true;
  for (const auto& ch : symmetric_tiling_coronas(ws.stars(), 1)) {
    const auto v = trace_pairing(ch, loop, in);
    const auto r = trace_pairing(ch, back, in);
    const bool consistent = v.value == v.frequency * l && r.value == -v.value;
    pok = pok && v.in_module() && consistent;
    values.push_back(to_json(v));
    if (!(v.in_module() && consistent) && p.witness.is_null()) p.witness = values.back();
    pairings.push_back(v);
  }
  const auto kernel = verify_kernel_lattice(cfg.generators_override);
  const auto k0 = k0_summary(kernel, pairings);
  p.details = Json{{"pairing", std::move(values)}, {"k0", to_json(k0)}};
  pok = pok && pairings.size() == 6 && k0.ok();
  p.status = pass_if(pok);
  return {w, p};
}

Check canonical_suite(const VerifyConfig& cfg, Workspace& ws) {
  Check c = make("canonical", "canonical-keys");
  std::mt19937_64 rng(cfg.seed);
  std::size_t trials = 0, mismatches = 0, mirror_clashes = 0;
  for (const auto& k : ws.catalogue()) {
    const Patch p{k.tiles, {}};
    for (std::size_t m = 0; m < cfg.motions; ++m) {
      const auto g = random_motion(rng);
      ++trials;
      if (!(canonicalize_anchored(apply(g, p), k.center).key == k.key)) {
        ++mismatches;
        if (c.witness.is_null()) c.witness = Json{{"key_hash", k.key.hash_hex()}, {"motion", to_json(g)}};
      }
    }
    if (canonicalize_anchored(mirror(p), k.center).key == k.key) {
      ++mirror_clashes;
      if (c.witness.is_null()) c.witness = Json{{"mirror_clash", k.key.hash_hex()}};
    }
  }
  for (auto ch : {Chirality::Minus, Chirality::Plus}) {
    const Patch single{{Tile{ch, RigidMotion::identity()}}, {}};
    if (canonicalize(single).key == canonicalize(mirror(single)).key) ++mirror_clashes;
  }
  c.details = Json{{"classes", ws.catalogue().size()},
                   {"motions_per_class", cfg.motions},
                   {"trials", trials},
                   {"mismatches", mismatches},
                   {"mirror_clashes", mirror_clashes}};
  c.status = pass_if(mismatches == 0 && mirror_clashes == 0);
  return c;
}

}  // namespace

std::vector<Check> run_verify(const VerifyConfig& cfg, std::span<const std::string> suites) {
  for (const auto& s : suites) {
    if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
      throw std::invalid_argument("unknown suite: " + s);
    }
  }
  auto wanted = [&](const std::string& s) { return std::find(suites.begin(), suites.end(), s) != suites.end(); };
  Workspace ws(cfg);
  std::vector<Check> out;
  auto timed = [&](const std::string& suite, const std::function<std::vector<Check>()>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<Check> checks;
    try {
      checks = body();
    } catch (const InsufficientContext& e) {
      Check c = make(suite, suite);
      c.status = Status::Undecided;
      c.details = Json{{"reason", e.what()}};
      checks.push_back(c);
    } catch (const PatchTooLarge& e) {
      Check c = make(suite, suite);
      c.status = Status::Undecided;
      c.details = Json{{"reason", e.what()}};
      checks.push_back(c);
    } catch (const std::exception& e) {
      Check c = make(suite, suite);
      c.status = Status::Fail;
      c.witness = Json{{"error", e.what()}};
      checks.push_back(c);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& c : checks) {
      c.seconds = secs / static_cast<double>(checks.size());
      out.push_back(std::move(c));
    }
  };
  for (const auto& s : suite_names()) {
    if (!wanted(s)) continue;
    if (s == "cover") timed(s, [&] { return std::vector{cover_suite(cfg)}; });
    if (s == "collared") timed(s, [&] { return std::vector{collared_suite(cfg, ws)}; });
    if (s == "chirality") timed(s, [&] { return std::vector{chirality_suite(ws)}; });
    if (s == "perron") timed(s, [&] { return std::vector{perron_suite(ws)}; });
    if (s == "module") timed(s, [&] { return std::vector{module_suite(cfg, ws)}; });
    if (s == "oracle") timed(s, [&] { return std::vector{oracle_suite(cfg, ws)}; });
    if (s == "kernel") timed(s, [&] { return std::vector{kernel_suite(cfg)}; });
    if (s == "symmetry") timed(s, [&] { return std::vector{symmetry_suite(cfg, ws)}; });
    if (s == "pairing") timed(s, [&] { return pairing_suite(cfg, ws); });
    if (s == "canonical") timed(s, [&] { return std::vector{canonical_suite(cfg, ws)}; });
  }
  return out;
}

}  // namespace pinwheel

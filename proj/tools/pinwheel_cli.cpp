// pinwheel: command-line front end.
//
// Every command writes one JSON report (or an SVG for `generate --format svg`)
// to --out, or stdout when --out is absent. Exit status is 0 iff no check failed.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>

#include <CLI11.hpp>
#include <omp.h>

#include "pinwheel/verify.hpp"

using namespace pinwheel;

namespace {

struct Options {
  int level = 4;
  int depth = -1;  // per-command default when negative
  std::string format = "json";
  std::string out;
  int workers = 0;
  std::string convention = "closed";
  int oracle_level = 0;
  std::string epsilon = "z2";
  std::string check = "all";
  std::vector<std::string> suites;
  std::uint64_t seed = 1;
  bool timings = false;
};

Json config_echo(const std::string& command, const Options& o) {
  Json j{{"command", command}, {"level", o.level}, {"depth", o.depth}, {"format", o.format}, {"out", o.out},
         {"workers", o.workers}, {"collar_convention", o.convention}, {"oracle_level", o.oracle_level},
         {"epsilon", o.epsilon}, {"check", o.check}, {"suite", o.suites}, {"seed", o.seed}, {"timings", o.timings}};
  if (const char* cap = std::getenv("PINWHEEL_MAX_TILES")) j["PINWHEEL_MAX_TILES"] = cap;
  return j;
}

Json envelope(const std::string& command, const Options& o) {
  return Json{{"schema", kReportSchema}, {"version", kVersion}, {"config", config_echo(command, o)}};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + o.out);
  f << text;
}

int finish(Json report, const Options& o, const std::vector<Check>& checks) {
  bool failed = false;
  Json list = Json::array();
  for (const auto& c : checks) {
    failed = failed || c.status == Status::Fail;
    list.push_back(to_json(c, o.timings));
  }
  if (!checks.empty()) report["checks"] = std::move(list);
  report["status"] = failed ? "fail" : "pass";
  emit(o, report.dump(2) + "\n");
  return failed ? 1 : 0;
}

int epsilon_power(const std::string& e) {
  static const std::regex re("z(-?[0-9]+)");
  std::smatch m;
  if (!std::regex_match(e, m, re)) throw CLI::ValidationError("--epsilon", "expected zM, e.g. z2");
  return std::stoi(m[1]);
}

// Frequency tables up to `depth`, from 1-collared classes at the witness level.
struct FrequencyState {
  std::vector<CollaredClass> classes;
  SubstitutionMatrix matrix;
  std::vector<FrequencyTable> tables;
  StarDynamics stars;
  std::vector<VertexCoronaClass> vertex;
};

FrequencyState build_frequencies(int context_level, int depth) {
  FrequencyState s;
  const Context ctx(context_level);
  const Context witness(context_level + 1);
  s.classes = collared_classes(witness, 1);
  s.matrix = build_substitution_matrix(s.classes, 1, CollarConvention::Closed);
  s.tables.push_back(collared_frequencies(s.classes, perron_data(s.matrix), CollarConvention::Closed));
  for (int r = 2; r <= std::max(2, depth); ++r) s.tables.push_back(lift_frequencies(s.tables.front(), r));
  s.stars = symmetric_star_dynamics(ctx);
  s.vertex = vertex_coronas(ctx);
  return s;
}

int cmd_generate(const Options& o) {
  const auto s = supertile(o.level);
  if (o.format == "svg") {
    emit(o, render_svg(s.tiles));
    return 0;
  }
  Json r = envelope("generate", o);
  r["supertile"] = to_json(s);
  r["tile_count"] = s.size();
  return finish(std::move(r), o, {});
}

int cmd_collared(const Options& o) {
  const int level = o.depth < 0 ? 6 : o.depth;
  const auto conv = collar_convention_from_string(o.convention);
  Json r = envelope("collared", o);
  Check c;
  c.suite = "collared";
  c.name = "stabilization";
  try {
    const auto e = enumerate_collared_prototiles(level, 1, conv);
    Json catalog = Json::array();
    for (const auto& k : e.classes) catalog.push_back(to_json(k, symmetry_group(Patch{k.tiles, {}}).order));
    r["count"] = e.classes.size();
    r["catalog"] = std::move(catalog);
    c.status = Status::Pass;
    c.details = Json{{"count_at_level", e.count_at_level}, {"count_at_next", e.count_at_next}};
  } catch (const StabilizationError& err) {
    c.status = Status::Undecided;
    c.details = Json{{"reason", err.what()}};
  }
  return finish(std::move(r), o, {c});
}

int cmd_frequencies(const Options& o) {
  const int depth = o.depth < 0 ? 2 : o.depth;
  auto s = build_frequencies(6, depth);
  const auto rep = frequency_module_report(s.tables, s.vertex, s.stars, depth);
  Json r = envelope("frequencies", o);
  r.update(to_json(rep));
  std::vector<Check> checks;
  Check m;
  m.suite = "module";
  m.name = "module-membership";
  m.status = rep.all_members() ? Status::Pass : Status::Fail;
  checks.push_back(m);
  if (o.oracle_level > 0) {
    VerifyConfig cfg;
    cfg.depth = depth;
    cfg.oracle_level = o.oracle_level;
    const std::vector<std::string> suite{"oracle"};
    for (auto& c : run_verify(cfg, suite)) checks.push_back(std::move(c));
  }
  return finish(std::move(r), o, checks);
}

std::vector<PairingValue> pairings(const FrequencyState& s, int power, int depth) {
  const auto rep = frequency_module_report(s.tables, s.vertex, s.stars, depth);
  PairingInputs in{s.tables, rep.generator};
  WindingLoop loop;
  loop.eps = BoundaryMap::monomial(power);
  std::vector<PairingValue> out;
  for (const auto& ch : symmetric_tiling_coronas(s.stars, 1)) out.push_back(trace_pairing(ch, loop, in));
  return out;
}

int cmd_ktheory(const Options& o) {
  if (o.check != "kernel" && o.check != "pairing" && o.check != "all") {
    throw CLI::ValidationError("--check", "expected kernel, pairing or all");
  }
  Json r = envelope("ktheory", o);
  std::vector<Check> checks;
  const auto kernel = verify_kernel_lattice();
  if (o.check != "pairing") {
    r["kernel"] = to_json(kernel);
    Check c;
    c.suite = "kernel";
    c.name = "kernel-lattice";
    c.status = kernel.ok() ? Status::Pass : Status::Fail;
    checks.push_back(c);
  }
  if (o.check != "kernel") {
    const auto s = build_frequencies(6, 2);
    const auto values = pairings(s, epsilon_power(o.epsilon), 2);
    Json list = Json::array();
    for (const auto& v : values) list.push_back(to_json(v));
    r["pairing"] = std::move(list);
    const auto k0 = k0_summary(kernel, values);
    r["k0"] = to_json(k0);
    Check c;
    c.suite = "pairing";
    c.name = "k0-summary";
    c.status = k0.ok() ? Status::Pass : Status::Fail;
    checks.push_back(c);
  }
  return finish(std::move(r), o, checks);
}

int cmd_pairing(const Options& o) {
  const int power = epsilon_power(o.epsilon);
  WindingLoop loop;
  loop.eps = BoundaryMap::monomial(power);
  Json r = envelope("pairing", o);
  Check c;
  c.suite = "pairing";
  c.name = "trace-pairing";
  long l = 0;
  try {
    l = winding_index(loop);
  } catch (const WindingError& e) {
    c.status = Status::Fail;
    c.witness = Json{{"error", e.what()}};
    return finish(std::move(r), o, {c});
  }
  const auto integral = winding_integral(loop, 10000);
  const auto s = build_frequencies(6, 2);
  const auto values = pairings(s, power, 2);
  Json list = Json::array();
  bool ok = integral.rounded == l && integral.residual < 1e-6;
  for (const auto& v : values) {
    list.push_back(to_json(v));
    ok = ok && v.in_module();
  }
  r["l"] = l;
  r["integral_residual"] = integral.residual;
  r["value"] = values.empty() ? Json(nullptr) : Json(format_rational(values.front().value));
  r["pairing"] = std::move(list);
  c.status = ok ? Status::Pass : Status::Fail;
  return finish(std::move(r), o, {c});
}

int cmd_verify(const Options& o) {
  VerifyConfig cfg;
  cfg.seed = o.seed;
  if (o.depth > 0) cfg.depth = o.depth;
  if (o.oracle_level > 0) cfg.oracle_level = o.oracle_level;
  cfg.epsilon_power = epsilon_power(o.epsilon);
  const auto& suites = o.suites.empty() ? suite_names() : o.suites;
  const auto checks = run_verify(cfg, suites);
  Json r = envelope("verify", o);
  r["suites"] = suites;
  return finish(std::move(r), o, checks);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pinwheel tiling engine"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output path (stdout when absent)");
    sub->add_option("--workers", o.workers, "OpenMP threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--collar-convention", o.convention, "closed or edge")->check(CLI::IsMember({"closed", "edge"}));
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    sub->add_flag("--timings", o.timings, "include wall-clock seconds in the report");
  };

  auto* gen = app.add_subcommand("generate", "supertile(n) as JSON or SVG");
  gen->add_option("--level", o.level, "supertile level")->check(CLI::Range(0, 12));
  gen->add_option("--format", o.format, "json or svg")->check(CLI::IsMember({"json", "svg"}));
  common(gen);

  auto* col = app.add_subcommand("collared", "collared prototile catalogue");
  col->add_option("--depth,--level", o.depth, "context level L (L + 1 is the witness)")->check(CLI::Range(1, 9));
  common(col);

  auto* fre = app.add_subcommand("frequencies", "exact frequencies and their module");
  fre->add_option("--depth", o.depth, "collar depth")->check(CLI::Range(1, 3));
  fre->add_option("--oracle-level", o.oracle_level, "run the counting oracle up to this level")->check(CLI::Range(0, 8));
  fre->add_option("--report", o.out, "same as --out");
  common(fre);

  auto* kt = app.add_subcommand("ktheory", "kernel lattice and trace pairing");
  kt->add_option("--check", o.check, "kernel, pairing or all");
  kt->add_option("--epsilon", o.epsilon, "boundary map z^m, written zM");
  common(kt);

  auto* pa = app.add_subcommand("pairing", "winding index times frequency");
  pa->add_option("--epsilon", o.epsilon, "boundary map z^m, written zM");
  common(pa);

  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", o.suites, "suite name (repeatable; all when absent)");
  ver->add_option("--depth", o.depth, "frequency depth")->check(CLI::Range(1, 3));
  ver->add_option("--oracle-level", o.oracle_level, "counting oracle level")->check(CLI::Range(3, 8));
  ver->add_option("--epsilon", o.epsilon, "boundary map z^m, written zM");
  common(ver);

  CLI11_PARSE(app, argc, argv);
  if (o.workers > 0) omp_set_num_threads(o.workers);

  try {
    if (*gen) return cmd_generate(o);
    if (*col) return cmd_collared(o);
    if (*fre) return cmd_frequencies(o);
    if (*kt) return cmd_ktheory(o);
    if (*pa) return cmd_pairing(o);
    if (*ver) return cmd_verify(o);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "pinwheel: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

#include "pinwheel/report.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

namespace pinwheel {

Json to_json(const Rational& q) { return format_rational(q); }

Json to_json(const ExactScalar& z) {
  Json j = Json::array();
  for (const auto& s : z.to_strings()) j.push_back(s);
  return j;
}

ExactScalar scalar_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) throw std::invalid_argument("scalar must be four rational strings");
  return ExactScalar::from_components(parse_rational(j[0].get<std::string>()), parse_rational(j[1].get<std::string>()),
                                      parse_rational(j[2].get<std::string>()), parse_rational(j[3].get<std::string>()));
}

Json to_json(const RigidMotion& g) { return Json{{"a", g.a}, {"b", g.b}, {"t", to_json(g.t)}, {"refl", g.refl}}; }

RigidMotion motion_from_json(const Json& j) {
  RigidMotion g;
  g.a = j.at("a").get<long>();
  g.b = RigidMotion::normalize_b(j.at("b").get<long>());
  g.t = scalar_from_json(j.at("t"));
  g.refl = j.at("refl").get<bool>();
  return g;
}

Json to_json(const Tile& t) { return Json{{"chirality", to_string(t.chirality)}, {"motion", to_json(t.motion)}}; }

Tile tile_from_json(const Json& j) {
  return {chirality_from_string(j.at("chirality").get<std::string>()), motion_from_json(j.at("motion"))};
}

Json to_json(const Supertile& s) {
  Json tiles = Json::array();
  for (const auto& t : s.tiles) tiles.push_back(to_json(t));
  return Json{{"level", s.level}, {"tiles", std::move(tiles)}};
}

Json to_json(std::span<const BigInt> v) {
  Json j = Json::array();
  for (const auto& x : v) j.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
  return j;
}

Json to_json(const IntMatrix& m) {
  Json j = Json::array();
  for (const auto& row : m) j.push_back(to_json(std::span<const BigInt>(row)));
  return j;
}

Json to_json(const CollaredClass& c, int symmetry_order) {
  return Json{{"key", c.key.text},
              {"key_hash", c.key.hash_hex()},
              {"chirality", to_string(c.chirality())},
              {"count_context", c.count},
              {"symmetry_order", symmetry_order}};
}

Json to_json(const ModuleReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back(Json{{"kind", e.kind},
                           {"key_hash", e.key.hash_hex()},
                           {"freq", format_rational(e.frequency)},
                           {"k_min", e.k_min ? Json(*e.k_min) : Json(nullptr)},
                           {"in_module", e.in_module()}});
  }
  return Json{{"frequencies", std::move(entries)},
              {"module", {{"generator", format_rational(r.generator)}, {"depth", r.depth}}},
              {"all_members", r.all_members()}};
}

Json to_json(const KernelLatticeReport& r) {
  Json j{{"rank", r.rank},
         {"equality", r.equality},
         {"hnf", to_json(r.kernel_hnf)},
         {"generators_hnf", to_json(r.generators_hnf)},
         {"generator_in_kernel", r.generator_in_kernel}};
  if (r.witness) j["witness"] = Json{{"vector", to_json(std::span<const BigInt>(*r.witness))}, {"note", r.witness_note}};
  return j;
}

Json to_json(const PairingValue& p) {
  return Json{{"center_key", p.center_key.hash_hex()},
              {"star_key", p.star_key.hash_hex()},
              {"l", p.l},
              {"freq", format_rational(p.frequency)},
              {"value", format_rational(p.value)},
              {"k_min", p.module_exponent ? Json(*p.module_exponent) : Json(nullptr)},
              {"in_module", p.in_module()}};
}

Json to_json(const K0Summary& k) {
  Json summands = Json::array();
  for (const auto& s : k.summands) {
    Json traces = Json::array();
    for (const auto& t : s.traces) traces.push_back(format_rational(t));
    summands.push_back(Json{{"name", s.name}, {"status", s.status}, {"traces", std::move(traces)}, {"in_module", s.in_module}});
  }
  return Json{{"summands", std::move(summands)}, {"kernel_ok", k.kernel_ok}, {"ok", k.ok()}};
}

std::string render_svg(std::span<const Tile> tiles, const SvgStyle& style) {
  double minx = std::numeric_limits<double>::infinity(), miny = minx;
  double maxx = -minx, maxy = -minx;
  std::vector<std::array<std::pair<double, double>, 3>> pts;
  pts.reserve(tiles.size());
  for (const auto& t : tiles) {
    const auto v = t.vertices();
    std::array<std::pair<double, double>, 3> p;
    for (int k = 0; k < 3; ++k) {
      p[k] = {v[k].x_approx(), v[k].y_approx()};
      minx = std::min(minx, p[k].first);
      maxx = std::max(maxx, p[k].first);
      miny = std::min(miny, p[k].second);
      maxy = std::max(maxy, p[k].second);
    }
    pts.push_back(p);
  }
  if (tiles.empty()) minx = miny = maxx = maxy = 0;
  const double pad = 1;
  const double w = (maxx - minx + 2 * pad) * style.scale, h = (maxy - miny + 2 * pad) * style.scale;
  char buf[256];
  std::string out;
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.4f\" height=\"%.4f\" viewBox=\"0 0 %.4f %.4f\">\n", w, h,
                w, h);
  out += buf;
  std::snprintf(buf, sizeof buf, "<g stroke=\"%s\" stroke-width=\"%.4f\" stroke-linejoin=\"round\">\n", style.stroke.c_str(),
                style.stroke_width);
  out += buf;
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    out += "<polygon points=\"";
    for (int k = 0; k < 3; ++k) {
      // y grows downwards in SVG
      std::snprintf(buf, sizeof buf, "%s%.4f,%.4f", k ? " " : "", (pts[i][k].first - minx + pad) * style.scale,
                    (maxy - pts[i][k].second + pad) * style.scale);
      out += buf;
    }
    out += "\" fill=\"";
    out += tiles[i].chirality == Chirality::Minus ? style.minus_fill : style.plus_fill;
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace pinwheel

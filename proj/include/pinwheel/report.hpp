#pragma once

// JSON serialization of exact values, supertiles and catalogues; SVG rendering.
// JSON is the source of truth. SVG is for looking at and is never read back.

#include <string>

#include <json.hpp>

#include "pinwheel/frequencies.hpp"
#include "pinwheel/ktheory.hpp"

namespace pinwheel {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "pinwheel-report/1";
inline constexpr const char* kVersion = "0.1.0";

/// Four rational strings (c1, c2, c3, c4).
Json to_json(const ExactScalar& z);
ExactScalar scalar_from_json(const Json& j);
Json to_json(const RigidMotion& g);
RigidMotion motion_from_json(const Json& j);
Json to_json(const Tile& t);
Tile tile_from_json(const Json& j);
Json to_json(const Supertile& s);
Json to_json(const Rational& q);  // "p/q"
Json to_json(const IntMatrix& m);
Json to_json(std::span<const BigInt> v);

/// Catalogue entry {key, key_hash, chirality, count_context, symmetry_order}.
Json to_json(const CollaredClass& c, int symmetry_order);
Json to_json(const ModuleReport& r);
Json to_json(const KernelLatticeReport& r);
Json to_json(const PairingValue& p);
Json to_json(const K0Summary& k);

struct SvgStyle {
  double scale = 20;  // pixels per unit
  double stroke_width = 0.5;
  std::string stroke = "#202020";
  std::string minus_fill = "#e8c170";
  std::string plus_fill = "#6f9fd8";
};
/// One polygon per tile; coordinates printed with fixed 4-decimal precision.
std::string render_svg(std::span<const Tile> tiles, const SvgStyle& style = {});

}  // namespace pinwheel

#include <doctest.h>

#include <random>
#include <regex>

#include "pinwheel/report.hpp"

using namespace pinwheel;

TEST_CASE("scalars, motions and tiles survive a JSON round trip") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 30);
  for (int n = 0; n < 100; ++n) {
    const auto z = ExactScalar::from_components(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)),
                                                Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    CHECK(scalar_from_json(Json::parse(to_json(z).dump())) == z);
  }
  for (const auto& t : supertile(3).tiles) {
    const Json j = Json::parse(to_json(t).dump());
    CHECK(tile_from_json(j) == t);
    CHECK(motion_from_json(to_json(t.motion)) == t.motion);
  }
}

TEST_CASE("supertile reports are deterministic and complete") {
  const auto s = supertile(2);
  const Json j = to_json(s);
  CHECK(j.dump() == to_json(supertile(2)).dump());
  CHECK(j["level"] == 2);
  REQUIRE(j["tiles"].size() == 25);
  for (std::size_t i = 0; i < 25; ++i) CHECK(tile_from_json(j["tiles"][i]) == s.tiles[i]);
  CHECK(to_json(Rational(-3, 12)) == "-1/4");
}

TEST_CASE("SVG has one polygon per tile") {
  const auto s = supertile(3);
  const auto svg = render_svg(s.tiles);
  const std::regex poly("<polygon");
  const auto n = std::distance(std::sregex_iterator(svg.begin(), svg.end(), poly), std::sregex_iterator());
  CHECK(n == 125);
  CHECK(svg.rfind("<svg", 0) == 0);
}

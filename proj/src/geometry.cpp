#include "pinwheel/geometry.hpp"

#include <stdexcept>
#include <vector>

namespace pinwheel {

namespace {

// Powers of (2+i)/sqrt5 for 0 <= a <= kCachedPowers; negative powers are conjugates.
constexpr long kCachedPowers = 64;

const std::vector<ExactScalar>& alpha_powers() {
  static const std::vector<ExactScalar> powers = [] {
    std::vector<ExactScalar> p;
    p.reserve(kCachedPowers + 1);
    p.emplace_back(1);
    for (long k = 1; k <= kCachedPowers; ++k) p.push_back(p.back() * alpha_unit());
    return p;
  }();
  return powers;
}

ExactScalar alpha_power(long a) {
  const long n = a < 0 ? -a : a;
  ExactScalar r;
  if (n <= kCachedPowers) {
    r = alpha_powers()[static_cast<std::size_t>(n)];
  } else {
    r = alpha_powers()[kCachedPowers];
    for (long k = kCachedPowers; k < n; ++k) r *= alpha_unit();
  }
  return a < 0 ? r.conj() : r;
}

ExactScalar times_i_power(ExactScalar z, int b) {
  switch (b & 3) {
    case 0:
      return z;
    case 1:
      return {-z.im(), z.re()};
    case 2:
      return -z;
    default:
      return {z.im(), -z.re()};
  }
}

}  // namespace

const ExactScalar& alpha_unit() {
  // (2+i)/sqrt5 = (2 sqrt5 + i sqrt5)/5
  static const ExactScalar u = ExactScalar::from_components(0, 0, Rational(2, 5), Rational(1, 5));
  return u;
}

ExactScalar rotation_unit(long a, int b) { return times_i_power(alpha_power(a), b); }

ExactScalar RigidMotion::apply(const ExactScalar& p) const {
  ExactScalar z = refl ? p.conj() : p;
  if (a == 0) {
    z = times_i_power(std::move(z), b);
  } else {
    z *= unit();
  }
  return z += t;
}

RigidMotion compose(const RigidMotion& g, const RigidMotion& h) {
  if (g.refl || h.refl) throw std::invalid_argument("reflections do not compose with tiling motions");
  RigidMotion r;
  r.a = g.a + h.a;
  r.b = RigidMotion::normalize_b(g.b + h.b);
  r.t = g.apply(h.t);
  return r;
}

RigidMotion inverse(const RigidMotion& g) {
  if (g.refl) throw std::invalid_argument("inverse of a reflecting motion is not tracked");
  RigidMotion r;
  r.a = -g.a;
  r.b = RigidMotion::normalize_b(-g.b);
  r.t = -(rotation_unit(r.a, r.b) * g.t);
  return r;
}

RigidMotion mirror(const RigidMotion& g) {
  if (g.refl) throw std::invalid_argument("mirror of a reflecting motion is not tracked");
  return {-g.a, RigidMotion::normalize_b(-g.b), g.t.conj(), false};
}

Chirality chirality_from_string(const std::string& s) {
  if (s == "MINUS") return Chirality::Minus;
  if (s == "PLUS") return Chirality::Plus;
  throw std::invalid_argument("unknown chirality: " + s);
}

const TriangleVertices& reference_vertices(Chirality c) {
  static const TriangleVertices minus{ExactScalar::gaussian(2, 0), ExactScalar::gaussian(2, 1),
                                      ExactScalar::gaussian(0, 0)};
  static const TriangleVertices plus = [] {
    const RigidMotion reflect{0, 0, ExactScalar{}, true};
    return TriangleVertices{reflect.apply(minus[0]), reflect.apply(minus[1]),
                            reflect.apply(minus[2])};
  }();
  return c == Chirality::Minus ? minus : plus;
}

TriangleVertices Tile::vertices() const {
  const auto& ref = reference_vertices(chirality);
  return {motion.apply(ref[0]), motion.apply(ref[1]), motion.apply(ref[2])};
}

Tile apply(const RigidMotion& g, const Tile& t) { return {t.chirality, compose(g, t.motion)}; }

Tile mirror(const Tile& t) { return {flip(t.chirality), mirror(t.motion)}; }

std::array<ExactPoint, 3> to_points(const TriangleVertices& v) {
  return {to_point(v[0]), to_point(v[1]), to_point(v[2])};
}

int orientation_sign(const ExactScalar& p, const ExactScalar& q, const ExactScalar& r) {
  return orient(to_point(p), to_point(q), to_point(r));
}

Chirality chirality_of(const TriangleVertices& v) {
  const auto right = to_point(v[0]);
  const int s = sign_of(cross(to_point(v[2]) - right, to_point(v[1]) - right));
  if (s == 0) throw std::invalid_argument("degenerate triangle");
  return s < 0 ? Chirality::Minus : Chirality::Plus;
}

RealQ5 twice_area(const TriangleVertices& v) {
  const auto p = to_points(v);
  RealQ5 c = cross(p[1] - p[0], p[2] - p[0]);
  return c.sign() < 0 ? -c : c;
}

RealQ5 squared_distance(const ExactScalar& p, const ExactScalar& q) { return (p - q).norm(); }

namespace {
Triangle<RealQ5> exact_triangle(const Tile& t) { return ccw(to_points(t.vertices())); }
}  // namespace

bool point_in_tile(const ExactScalar& p, const Tile& t) {
  return in_closed_triangle(to_point(p), exact_triangle(t));
}

bool interiors_disjoint(const Tile& x, const Tile& y) {
  return interiors_disjoint(exact_triangle(x), exact_triangle(y));
}

bool tiles_touch(const Tile& x, const Tile& y) {
  return closed_intersect(exact_triangle(x), exact_triangle(y));
}

bool share_edge_segment(const Tile& x, const Tile& y) {
  return share_segment(exact_triangle(x), exact_triangle(y));
}

std::optional<RigidMotion> congruence(const Tile& x, const Tile& y) {
  if (x.chirality != y.chirality) return std::nullopt;
  return compose(y.motion, inverse(x.motion));
}

}  // namespace pinwheel

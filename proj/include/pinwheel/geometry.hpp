#pragma once

// Rigid motions with symbolic rotation exponents, the two pinwheel prototiles,
// and exact tile predicates.
//
// Convention: motions act on points from the left, g.p = u*p + t, where
// u = ((2+i)/sqrt5)^a * i^b. The right action T.(s, R_theta) = R_{-theta}(T - s)
// used for tilings is the inverse of the motion (a, b, s) under this convention.

#include <array>
#include <optional>
#include <span>
#include <string>

#include "pinwheel/exact.hpp"
#include "pinwheel/predicates.hpp"

namespace pinwheel {

/// Unit for rotation by alpha = arg(2+i).
const ExactScalar& alpha_unit();
/// ((2+i)/sqrt5)^a * i^b, exact.
ExactScalar rotation_unit(long a, int b);

struct RigidMotion {
  long a = 0;         // exponent of rotation by alpha
  int b = 0;          // exponent of the quarter turn, kept in 0..3
  ExactScalar t{};    // translation
  bool refl = false;  // conjugate before rotating; prototile definition only

  static RigidMotion identity() { return {}; }
  static RigidMotion translation(ExactScalar t) { return {0, 0, std::move(t), false}; }
  static RigidMotion rotation(long a, int b) { return {a, normalize_b(b), ExactScalar{}, false}; }
  static int normalize_b(long b) { return static_cast<int>(((b % 4) + 4) % 4); }

  ExactScalar unit() const { return rotation_unit(a, b); }
  ExactScalar apply(const ExactScalar& p) const;
  bool is_identity() const { return a == 0 && b == 0 && t.is_zero() && !refl; }

  friend bool operator==(const RigidMotion& x, const RigidMotion& y) {
    return x.a == y.a && x.b == y.b && x.refl == y.refl && x.t == y.t;
  }
};

/// g∘h. Reflections never enter composition; throws std::invalid_argument if either has refl.
RigidMotion compose(const RigidMotion& g, const RigidMotion& h);
RigidMotion inverse(const RigidMotion& g);
/// conj∘g∘conj: the motion acting on mirrored configurations.
RigidMotion mirror(const RigidMotion& g);

enum class Chirality : unsigned char { Minus = 0, Plus = 1 };

inline Chirality flip(Chirality c) { return c == Chirality::Minus ? Chirality::Plus : Chirality::Minus; }
inline const char* to_string(Chirality c) { return c == Chirality::Minus ? "MINUS" : "PLUS"; }
Chirality chirality_from_string(const std::string& s);

/// Vertices of a tile in the order (right-angle vertex, short-leg end, long-leg end).
using TriangleVertices = std::array<ExactScalar, 3>;

/// The reference prototile of a chirality. MINUS is the seed (2,0),(2,1),(0,0);
/// PLUS is its complex conjugate.
const TriangleVertices& reference_vertices(Chirality c);

struct Tile {
  Chirality chirality = Chirality::Minus;
  RigidMotion motion{};

  TriangleVertices vertices() const;
  friend bool operator==(const Tile& x, const Tile& y) {
    return x.chirality == y.chirality && x.motion == y.motion;
  }
};

Tile apply(const RigidMotion& g, const Tile& t);
/// Mirror image under complex conjugation (chirality flips).
Tile mirror(const Tile& t);

using ExactPoint = Vec2<RealQ5>;
inline ExactPoint to_point(const ExactScalar& z) { return {z.re(), z.im()}; }
std::array<ExactPoint, 3> to_points(const TriangleVertices& v);

/// Sign of the cross product (q - p) x (r - p): +1 counter-clockwise.
int orientation_sign(const ExactScalar& p, const ExactScalar& q, const ExactScalar& r);
/// Chirality implied by vertex geometry: sign of (right->long) x (right->short).
Chirality chirality_of(const TriangleVertices& v);
RealQ5 twice_area(const TriangleVertices& v);
RealQ5 squared_distance(const ExactScalar& p, const ExactScalar& q);

bool point_in_tile(const ExactScalar& p, const Tile& t);
bool interiors_disjoint(const Tile& x, const Tile& y);
bool tiles_touch(const Tile& x, const Tile& y);
bool share_edge_segment(const Tile& x, const Tile& y);
/// The unique direct isometry g with g(x) = y, or nothing when chiralities differ.
std::optional<RigidMotion> congruence(const Tile& x, const Tile& y);

}  // namespace pinwheel

#pragma once

// Exact planar predicates on triangles, written once for any exact ring.
//
// Instantiated with RealQ5 (the exact reference path) and with __int128 on
// coordinates scaled to a common denominator (the integer frame used by the
// fast kernels). Triangles are passed as three points in any orientation.

#include <array>

namespace pinwheel {

template <class T>
struct Vec2 {
  T x;
  T y;

  friend Vec2 operator-(const Vec2& p, const Vec2& q) { return {p.x - q.x, p.y - q.y}; }
  friend Vec2 operator+(const Vec2& p, const Vec2& q) { return {p.x + q.x, p.y + q.y}; }
  friend bool operator==(const Vec2& p, const Vec2& q) { return p.x == q.x && p.y == q.y; }
};

template <class T>
int sign_of(const T& v) {
  if constexpr (requires { v.sign(); }) {
    return v.sign();
  } else {
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
}

template <class T>
T cross(const Vec2<T>& u, const Vec2<T>& v) {
  return u.x * v.y - u.y * v.x;
}

template <class T>
T dot(const Vec2<T>& u, const Vec2<T>& v) {
  return u.x * v.x + u.y * v.y;
}

template <class T>
int orient(const Vec2<T>& a, const Vec2<T>& b, const Vec2<T>& c) {
  return sign_of(cross(b - a, c - a));
}

template <class T>
using Triangle = std::array<Vec2<T>, 3>;

/// Reorders to counter-clockwise. Degenerate triangles are left as is.
template <class T>
Triangle<T> ccw(Triangle<T> t) {
  if (orient(t[0], t[1], t[2]) < 0) std::swap(t[1], t[2]);
  return t;
}

template <class T>
bool on_closed_segment(const Vec2<T>& p, const Vec2<T>& a, const Vec2<T>& b) {
  if (orient(a, b, p) != 0) return false;
  return sign_of(dot(p - a, p - b)) <= 0;
}

/// Point in closed triangle; t must be counter-clockwise.
template <class T>
bool in_closed_triangle(const Vec2<T>& p, const Triangle<T>& t) {
  return orient(t[0], t[1], p) >= 0 && orient(t[1], t[2], p) >= 0 && orient(t[2], t[0], p) >= 0;
}

template <class T>
bool in_open_triangle(const Vec2<T>& p, const Triangle<T>& t) {
  return orient(t[0], t[1], p) > 0 && orient(t[1], t[2], p) > 0 && orient(t[2], t[0], p) > 0;
}

namespace detail {

// True when every vertex of `other` lies weakly (strict = false) or strictly
// (strict = true) on the outer side of one of the edges of `t`.
template <class T>
bool separated_by_edge_of(const Triangle<T>& t, const Triangle<T>& other, bool strict) {
  for (int e = 0; e < 3; ++e) {
    const auto& a = t[e];
    const auto& b = t[(e + 1) % 3];
    bool all_out = true;
    for (const auto& v : other) {
      const int o = orient(a, b, v);
      if (strict ? o >= 0 : o > 0) {
        all_out = false;
        break;
      }
    }
    if (all_out) return true;
  }
  return false;
}

}  // namespace detail

/// Interiors of two non-degenerate ccw triangles are disjoint (separating axis test).
template <class T>
bool interiors_disjoint(const Triangle<T>& x, const Triangle<T>& y) {
  return detail::separated_by_edge_of(x, y, false) || detail::separated_by_edge_of(y, x, false);
}

/// Closed triangles share at least one point.
template <class T>
bool closed_intersect(const Triangle<T>& x, const Triangle<T>& y) {
  return !(detail::separated_by_edge_of(x, y, true) || detail::separated_by_edge_of(y, x, true));
}

/// Some edge of x and some edge of y overlap in a segment of positive length.
template <class T>
bool share_segment(const Triangle<T>& x, const Triangle<T>& y) {
  for (int i = 0; i < 3; ++i) {
    const auto& a = x[i];
    const auto& b = x[(i + 1) % 3];
    const auto dir = b - a;
    const T len2 = dot(dir, dir);
    for (int j = 0; j < 3; ++j) {
      const auto& c = y[j];
      const auto& d = y[(j + 1) % 3];
      if (orient(a, b, c) != 0 || orient(a, b, d) != 0) continue;
      T pc = dot(c - a, dir);
      T pd = dot(d - a, dir);
      if (sign_of(pc - pd) > 0) std::swap(pc, pd);
      // overlap of [0, len2] and [pc, pd] has positive length
      const T lo = sign_of(pc) > 0 ? pc : T(0);
      const T hi = sign_of(pd - len2) < 0 ? pd : len2;
      if (sign_of(hi - lo) > 0) return true;
    }
  }
  return false;
}

}  // namespace pinwheel

#pragma once

// Exact arithmetic over Q(i, sqrt5).
//
// Every coordinate in the engine is an ExactScalar c1 + c2*i + c3*sqrt5 + c4*i*sqrt5
// with arbitrary-precision rational components. Real quantities derived from
// coordinates (cross products, squared lengths) live in the real subfield Q(sqrt5)
// and are represented by RealQ5, which supports exact sign determination.

#include <gmpxx.h>

#include <array>
#include <compare>
#include <stdexcept>
#include <string>

namespace pinwheel {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Parses "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
/// Always emits "p/q" (q = 1 is written explicitly).
std::string format_rational(const Rational& q);

/// a + b*sqrt5 with rational a, b.
class RealQ5 {
 public:
  RealQ5() = default;
  RealQ5(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  RealQ5(Rational a, Rational b = 0) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  const Rational& rational_part() const { return a_; }
  const Rational& sqrt5_part() const { return b_; }

  int sign() const;
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  double to_double() const;

  RealQ5 operator-() const { return RealQ5(-a_, -b_); }
  RealQ5& operator+=(const RealQ5& o);
  RealQ5& operator-=(const RealQ5& o);
  RealQ5& operator*=(const RealQ5& o);
  RealQ5& operator/=(const RealQ5& o);
  RealQ5 inverse() const;

  friend RealQ5 operator+(RealQ5 x, const RealQ5& y) { return x += y; }
  friend RealQ5 operator-(RealQ5 x, const RealQ5& y) { return x -= y; }
  friend RealQ5 operator*(RealQ5 x, const RealQ5& y) { return x *= y; }
  friend RealQ5 operator/(RealQ5 x, const RealQ5& y) { return x /= y; }
  friend bool operator==(const RealQ5& x, const RealQ5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend std::strong_ordering operator<=>(const RealQ5& x, const RealQ5& y) {
    const int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational a_{0};
  Rational b_{0};
};

/// Element of Q(i, sqrt5). Stored as real and imaginary parts in Q(sqrt5).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(RealQ5 re, RealQ5 im) : re_(std::move(re)), im_(std::move(im)) {}
  static ExactScalar gaussian(long x, long y) { return {RealQ5(x), RealQ5(y)}; }
  static ExactScalar from_components(Rational c1, Rational c2, Rational c3, Rational c4) {
    return {RealQ5(std::move(c1), std::move(c3)), RealQ5(std::move(c2), std::move(c4))};
  }
  static const ExactScalar& i_unit();
  static const ExactScalar& sqrt5();

  const RealQ5& re() const { return re_; }
  const RealQ5& im() const { return im_; }
  const Rational& c1() const { return re_.rational_part(); }
  const Rational& c2() const { return im_.rational_part(); }
  const Rational& c3() const { return re_.sqrt5_part(); }
  const Rational& c4() const { return im_.sqrt5_part(); }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  /// True when the value lies in Q(i), i.e. c3 = c4 = 0.
  bool in_gaussian_rationals() const { return sgn(c3()) == 0 && sgn(c4()) == 0; }
  bool is_gaussian_integer() const;

  ExactScalar conj() const { return {re_, -im_}; }
  RealQ5 norm() const { return re_ * re_ + im_ * im_; }

  ExactScalar operator-() const { return {-re_, -im_}; }
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  /// Throws std::domain_error on division by zero.
  ExactScalar& operator/=(const ExactScalar& o);
  ExactScalar& operator*=(const RealQ5& r);

  friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
  friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
  friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
  friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }
  friend ExactScalar operator*(ExactScalar x, const RealQ5& r) { return x *= r; }
  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.re_ == y.re_ && x.im_ == y.im_;
  }

  /// Four "p/q" strings in basis order (1, i, sqrt5, i*sqrt5).
  std::array<std::string, 4> to_strings() const;
  static ExactScalar from_strings(const std::array<std::string, 4>& parts);
  /// Compact single-string form used inside canonical keys.
  std::string to_key() const;

  double x_approx() const { return re_.to_double(); }
  double y_approx() const { return im_.to_double(); }

 private:
  RealQ5 re_;
  RealQ5 im_;
};

}  // namespace pinwheel

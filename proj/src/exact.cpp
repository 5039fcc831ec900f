#include "pinwheel/exact.hpp"

#include <cmath>

namespace pinwheel {

Rational parse_rational(const std::string& text) {
  Rational q;
  if (text.empty() || q.set_str(text, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + text + "'");
  }
  if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational r(q);  // callers may hand over uncanonicalized values
  r.canonicalize();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

int RealQ5::sign() const {
  const int sa = sgn(a_);
  const int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and 5 b^2 wins. Equality is impossible.
  const Rational a2 = a_ * a_;
  const Rational b2 = 5 * b_ * b_;
  return cmp(a2, b2) > 0 ? sa : sb;
}

double RealQ5::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(5.0); }

RealQ5& RealQ5::operator+=(const RealQ5& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

RealQ5& RealQ5::operator-=(const RealQ5& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

RealQ5& RealQ5::operator*=(const RealQ5& o) {
  if (sgn(b_) == 0 && sgn(o.b_) == 0) {
    a_ *= o.a_;
    return *this;
  }
  Rational na = a_ * o.a_ + 5 * b_ * o.b_;
  Rational nb = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

RealQ5 RealQ5::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt5)");
  const Rational d = a_ * a_ - 5 * b_ * b_;
  return RealQ5(a_ / d, -b_ / d);
}

RealQ5& RealQ5::operator/=(const RealQ5& o) { return *this *= o.inverse(); }

const ExactScalar& ExactScalar::i_unit() {
  static const ExactScalar value(RealQ5(0), RealQ5(1));
  return value;
}

const ExactScalar& ExactScalar::sqrt5() {
  static const ExactScalar value(RealQ5(0, 1), RealQ5(0));
  return value;
}

bool ExactScalar::is_gaussian_integer() const {
  return in_gaussian_rationals() && c1().get_den() == 1 && c2().get_den() == 1;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  RealQ5 re = re_ * o.re_ - im_ * o.im_;
  RealQ5 im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

ExactScalar& ExactScalar::operator*=(const RealQ5& r) {
  re_ *= r;
  im_ *= r;
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero in Q(i,sqrt5)");
  *this *= o.conj();
  return *this *= o.norm().inverse();
}

std::array<std::string, 4> ExactScalar::to_strings() const {
  return {format_rational(c1()), format_rational(c2()), format_rational(c3()),
          format_rational(c4())};
}

ExactScalar ExactScalar::from_strings(const std::array<std::string, 4>& parts) {
  return from_components(parse_rational(parts[0]), parse_rational(parts[1]),
                         parse_rational(parts[2]), parse_rational(parts[3]));
}

std::string ExactScalar::to_key() const {
  std::string out = c1().get_str();
  out += ',';
  out += c2().get_str();
  if (!in_gaussian_rationals()) {
    out += ',';
    out += c3().get_str();
    out += ',';
    out += c4().get_str();
  }
  return out;
}

}  // namespace pinwheel

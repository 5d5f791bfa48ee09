#include "bcwp/exponents/surd.hpp"

#include "bcwp/errors.hpp"

#include <cmath>

namespace bcwp::exponents {

namespace {

// n = s^2 * r with r squarefree as far as trial division up to the limit can tell.
// When the limit is hit the remaining cofactor may carry a square; the value stays exact.
void extract_square(const Integer& n, Integer& s, Integer& r) {
  s = 1;
  r = n;
  for (Integer p = 2; p * p <= r && p < 1000000; ++p) {
    const Integer p2 = p * p;
    while (r % p2 == 0) {
      r /= p2;
      s *= p;
    }
  }
  const Integer root = integer_sqrt(r);
  if (root * root == r) {
    s *= root;
    r = 1;
  }
}

}  // namespace

QuadraticSurd QuadraticSurd::from_rational(const Rational& x) { return {x, Rational(0), Integer(1)}; }

QuadraticSurd QuadraticSurd::sqrt_of(const Rational& x) {
  if (x < 0) throw Error("sqrt_of: negative radicand");
  if (x == 0) return from_rational(Rational(0));
  const Integer num = boost::multiprecision::numerator(x);
  const Integer den = boost::multiprecision::denominator(x);
  // sqrt(num/den) = sqrt(num*den)/den
  Integer s, r;
  extract_square(num * den, s, r);
  if (r == 1) return from_rational(Rational(s, den));
  return {Rational(0), Rational(s, den), r};
}

std::optional<Rational> QuadraticSurd::as_rational() const {
  if (b == 0) return a;
  return std::nullopt;
}

double QuadraticSurd::to_double() const {
  if (b == 0) return exponents::to_double(a);
  return exponents::to_double(a) + exponents::to_double(b) * std::sqrt(d.convert_to<double>());
}

std::string QuadraticSurd::to_string() const {
  if (b == 0) return exponents::to_string(a);
  std::string out;
  if (a != 0) out = exponents::to_string(a) + (b > 0 ? " + " : " - ");
  else if (b < 0) out = "-";
  const Rational mag = b < 0 ? Rational(-b) : b;
  if (mag != 1) out += exponents::to_string(mag) + "*";
  out += "sqrt(" + d.str() + ")";
  return out;
}

QuadraticSurd QuadraticSurd::operator*(const Rational& x) const {
  if (x == 0) return from_rational(Rational(0));
  return {a * x, b * x, d};
}

int compare(const Rational& x, const QuadraticSurd& s) {
  // sign(x - a - b sqrt(d)) = sign(u - v) with u = x - a, v = b sqrt(d)
  const Rational u = x - s.a;
  if (s.b == 0) return u.sign();
  const int su = u.sign();
  const int sv = s.b.sign();
  if (su != sv) {
    // v is never zero here; if u is zero the sign is that of -v
    return su > sv ? 1 : -1;
  }
  // same sign: compare squares
  const Rational u2 = u * u;
  const Rational v2 = s.b * s.b * Rational(s.d);
  const int c = Rational(u2 - v2).sign();
  return su > 0 ? c : -c;
}

int compare(const QuadraticSurd& s, const QuadraticSurd& t) {
  if (t.b == 0) return -compare(t.a, s);
  if (s.b == 0) return compare(s.a, t);
  if (s.d != t.d) throw Error("compare: surds with different radicands");
  // s - t = (a_s - a_t) + (b_s - b_t) sqrt(d)
  const QuadraticSurd diff{s.a - t.a, s.b - t.b, s.d};
  return -compare(Rational(0), diff);
}

QuadraticRoots solve_quadratic(const Rational& A, const Rational& B, const Rational& C) {
  if (A == 0) throw Error("solve_quadratic: leading coefficient is zero");
  QuadraticRoots roots;
  roots.discriminant = B * B - 4 * A * C;
  if (roots.discriminant < 0) return roots;
  const Rational centre = -B / (2 * A);
  if (roots.discriminant == 0) {
    roots.low = roots.high = QuadraticSurd::from_rational(centre);
    roots.double_root = true;
    return roots;
  }
  const QuadraticSurd half_width = QuadraticSurd::sqrt_of(roots.discriminant) * (1 / (2 * A));
  QuadraticSurd r1 = half_width + centre;
  QuadraticSurd r2 = (-half_width) + centre;
  if (compare(r1, r2) > 0) std::swap(r1, r2);
  roots.low = r1;
  roots.high = r2;
  return roots;
}

}  // namespace bcwp::exponents

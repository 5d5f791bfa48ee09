#pragma once

#include "bcwp/exponents/rational.hpp"

#include <optional>
#include <string>

namespace bcwp::exponents {

/// Exact real number a + b*sqrt(d) with d a squarefree integer >= 2, or b = 0.
struct QuadraticSurd {
  Rational a{0};
  Rational b{0};
  Integer d{1};

  static QuadraticSurd from_rational(const Rational& x);
  /// sqrt(x) for x >= 0, with square factors of the radicand pulled out.
  static QuadraticSurd sqrt_of(const Rational& x);

  bool is_rational() const { return b == 0; }
  std::optional<Rational> as_rational() const;
  double to_double() const;
  /// "a + b*sqrt(d)" in lowest terms, or the rational alone.
  std::string to_string() const;

  QuadraticSurd operator+(const Rational& x) const { return {a + x, b, d}; }
  QuadraticSurd operator*(const Rational& x) const;
  QuadraticSurd operator-() const { return {-a, -b, d}; }
};

/// Exact sign of x - s.
int compare(const Rational& x, const QuadraticSurd& s);
/// Exact sign of s - t; requires equal radicands or one side rational.
int compare(const QuadraticSurd& s, const QuadraticSurd& t);

/// Real roots of A t^2 + B t + C (A != 0) ordered low <= high, exact.
struct QuadraticRoots {
  Rational discriminant;
  std::optional<QuadraticSurd> low;
  std::optional<QuadraticSurd> high;
  bool double_root = false;
};
QuadraticRoots solve_quadratic(const Rational& A, const Rational& B, const Rational& C);

}  // namespace bcwp::exponents

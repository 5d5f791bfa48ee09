#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bcwp::exponents {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact value of a finite double (every double is a dyadic rational).
Rational rational_from_double(double x);

/// Parses "a/b", integers and decimals with optional exponent ("-0.125", "3e-2") exactly.
/// Throws bcwp::ConfigError on malformed input.
Rational parse_rational(std::string_view text);

double to_double(const Rational& x);

/// "n" or "n/d" in lowest terms.
std::string to_string(const Rational& x);

int sign(const Rational& x);

/// Largest s with s*s <= n, for n >= 0.
Integer integer_sqrt(const Integer& n);

}  // namespace bcwp::exponents

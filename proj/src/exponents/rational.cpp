#include "bcwp/exponents/rational.hpp"

#include "bcwp/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

namespace bcwp::exponents {

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw Error("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);  // x = mantissa * 2^exponent, |mantissa| in [0.5,1)
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer numerator(scaled);
  Integer denominator(1);
  if (exponent >= 0)
    numerator <<= exponent;
  else
    denominator <<= -exponent;
  return Rational(numerator, denominator);
}

namespace {

Integer parse_integer_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ConfigError("malformed rational '" + std::string(whole) + "'");
  Integer value(0);
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ConfigError("malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (ch - '0');
  }
  return value;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    text = text.substr(0, e);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    const Integer magnitude = parse_integer_digits(exp_part, whole);
    if (magnitude > 4000) throw ConfigError("exponent out of range in '" + std::string(whole) + "'");
    exponent = magnitude.convert_to<long>() * (exp_negative ? -1 : 1);
  }
  std::string digits;
  long fraction_digits = 0;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view integral = text.substr(0, dot);
    const std::string_view fractional = text.substr(dot + 1);
    if (integral.empty() && fractional.empty())
      throw ConfigError("malformed rational '" + std::string(whole) + "'");
    digits = std::string(integral) + std::string(fractional);
    fraction_digits = static_cast<long>(fractional.size());
  } else {
    digits = std::string(text);
  }
  Integer numerator = parse_integer_digits(digits, whole);
  Integer denominator(1);
  const long shift = exponent - fraction_digits;
  for (long i = 0; i < std::labs(shift); ++i) {
    if (shift > 0)
      numerator *= 10;
    else
      denominator *= 10;
  }
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ConfigError("empty rational literal");
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational numerator = parse_decimal(text.substr(0, slash), text);
    const Rational denominator = parse_decimal(text.substr(slash + 1), text);
    if (denominator == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    return numerator / denominator;
  }
  return parse_decimal(text, text);
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

std::string to_string(const Rational& x) {
  const Integer n = boost::multiprecision::numerator(x);
  const Integer d = boost::multiprecision::denominator(x);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

int sign(const Rational& x) { return x.sign(); }

Integer integer_sqrt(const Integer& n) {
  if (n < 0) throw Error("integer_sqrt of a negative integer");
  return boost::multiprecision::sqrt(n);
}

}  // namespace bcwp::exponents

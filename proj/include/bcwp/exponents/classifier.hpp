#pragma once

#include "bcwp/exponents/rational.hpp"
#include "bcwp/exponents/surd.hpp"

#include <optional>
#include <ostream>
#include <string>

namespace bcwp::exponents {

/// Exponent data of the reduced scalar-curvature equation
///   -beta Lap u + S_B u = S u^p - S_F u^q,  psi = u^alpha,
/// for a (psi,mu) metric with base dimension m and fiber dimension k.
struct AlphaBeta {
  Rational alpha;
  Rational beta;
};

/// Throws SingularParameterError when mu = -k/(m-1) (alpha vanishes) or the denominator vanishes.
AlphaBeta alpha_beta(int m, int k, const Rational& mu);

struct Exponents {
  Rational p;
  Rational q;
};
Exponents exponents(int m, int k, const Rational& mu);

/// eta is the denominator of alpha; p = varpi/eta and q = varrho/eta.
struct Quadratics {
  Rational eta;
  Rational varpi;
  Rational varrho;
};
Quadratics quadratics(int m, int k, const Rational& mu);

/// Discriminant in mu of varpi(m,k,.); never positive for m >= 2.
Rational varpi_discriminant(int m, int k);

/// Membership of (m,k) in D: varrho(m,k,.) has negative discriminant.
struct DomainD {
  bool in_D = false;
  Rational discriminant;
  std::optional<QuadraticSurd> mu_minus;
  std::optional<QuadraticSurd> mu_plus;
  bool double_root = false;
};
DomainD domain_D(int m, int k);

/// Distinguished mu values. The ones with a factor 1/(m-2) are absent for m = 2.
struct SpecialMu {
  Rational mu_sc;
  std::optional<Rational> mu_pY;
  std::optional<Rational> p_Y;
  std::optional<Rational> mu_bar;
  std::optional<QuadraticSurd> mu_bar_minus;
  std::optional<QuadraticSurd> mu_bar_plus;
};
SpecialMu special_mu(int m, int k);

/// True when mu makes a denominator of the Ricci coefficients vanish: mu in {0, 1}, (m-2)mu + k = 0,
/// or mu[(m-2)mu + k] + k(mu - 1) = 0.
bool ricci_singular_mu(int m, int k, const Rational& mu);

enum class Regime {
  deferred,
  linear,
  sublinear,
  superlinear_subcritical,
  critical,
  supercritical,
  q_negative_singular,
  q_zero,
  q_linear,
  concave_convex,
};

std::string to_string(Regime r);
std::ostream& operator<<(std::ostream& os, Regime r);

struct RegimeReport {
  int m = 0;
  int k = 0;
  Rational mu;
  int fiber_sign = 0;  // sign of S_F
  std::optional<Rational> alpha, beta, p, q;
  Quadratics quad;
  DomainD domain;
  SpecialMu special;
  Regime regime = Regime::deferred;
  bool singular_mu = false;
  /// Which existence / nonexistence statement applies, described by its content.
  std::string applicable_result;
  /// Route the elliptic solver takes for this label.
  std::string strategy;
};

/// Labels the nonlinearity of the reduced equation from the exact positions of p and q.
/// A value exactly on a boundary (p = 1, p = p_Y, q = 0, q = 1) gets the boundary label.
RegimeReport classify(int m, int k, const Rational& mu, int fiber_sign = 0);

/// Parses "-", "0", "+", "negative", "zero", "positive" or a number into a sign.
int parse_fiber_sign(const std::string& text);

}  // namespace bcwp::exponents

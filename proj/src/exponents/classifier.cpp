#include "bcwp/exponents/classifier.hpp"

#include "bcwp/errors.hpp"

#include <stdexcept>

namespace bcwp::exponents {

namespace {

void require_dimensions(int m, int k) {
  if (m < 2) throw DimensionError("base dimension m must be >= 2, got " + std::to_string(m));
  if (k < 0) throw DimensionError("fiber dimension k must be >= 0, got " + std::to_string(k));
}

Rational eta_of(int m, int k, const Rational& mu) {
  return Rational((m - 1) * (m - 2)) * mu * mu + Rational(2 * (m - 2) * k) * mu + Rational(k * (k + 1));
}

}  // namespace

AlphaBeta alpha_beta(int m, int k, const Rational& mu) {
  require_dimensions(m, k);
  const Rational s = Rational(k) + Rational(m - 1) * mu;
  if (s == 0)
    throw SingularParameterError("mu = mu_sc = " + to_string(Rational(-k, m - 1)) +
                                 ": alpha vanishes and the reduced equation changes type");
  const Rational eta = eta_of(m, k, mu);
  if (eta == 0) throw SingularParameterError("alpha denominator eta vanishes at mu = " + to_string(mu));
  AlphaBeta ab;
  ab.alpha = 2 * s / eta;
  ab.beta = 2 * ab.alpha * s;
  return ab;
}

Exponents exponents(int m, int k, const Rational& mu) {
  const AlphaBeta ab = alpha_beta(m, k, mu);
  Exponents e;
  e.p = 2 * mu * ab.alpha + 1;
  e.q = e.p - 2 * ab.alpha;
  const Quadratics quad = quadratics(m, k, mu);
  if (e.p != quad.varpi / quad.eta || e.q != quad.varrho / quad.eta)
    throw std::logic_error("exponents: p, q disagree with varpi/eta, varrho/eta");
  return e;
}

Quadratics quadratics(int m, int k, const Rational& mu) {
  require_dimensions(m, k);
  Quadratics out;
  out.eta = eta_of(m, k, mu);
  out.varpi = Rational((m - 1) * (m + 2)) * mu * mu + Rational(2 * m * k) * mu + Rational((k + 1) * k);
  out.varrho = Rational((m - 1) * (m + 2)) * mu * mu + Rational(2 * (m * k - 2 * (m - 1))) * mu +
               Rational((k - 3) * k);
  return out;
}

Rational varpi_discriminant(int m, int k) {
  require_dimensions(m, k);
  const Rational A((m - 1) * (m + 2));
  const Rational B(2 * m * k);
  const Rational C((k + 1) * k);
  return B * B - 4 * A * C;
}

DomainD domain_D(int m, int k) {
  require_dimensions(m, k);
  const Rational A((m - 1) * (m + 2));
  const Rational B(2 * (m * k - 2 * (m - 1)));
  const Rational C((k - 3) * k);
  const QuadraticRoots roots = solve_quadratic(A, B, C);
  DomainD d;
  d.discriminant = roots.discriminant;
  d.in_D = roots.discriminant < 0;
  d.mu_minus = roots.low;
  d.mu_plus = roots.high;
  d.double_root = roots.double_root;
  return d;
}

SpecialMu special_mu(int m, int k) {
  require_dimensions(m, k);
  SpecialMu s;
  s.mu_sc = Rational(-k, m - 1);
  if (m >= 3) {
    s.mu_pY = Rational(-(k + 1), m - 2);
    s.p_Y = Rational(m + 2, m - 2);
    s.mu_bar = Rational(-k, m - 2);
    const Rational radicand = *s.mu_bar * *s.mu_bar - *s.mu_bar;
    const QuadraticSurd half = QuadraticSurd::sqrt_of(radicand);
    s.mu_bar_minus = (-half) + *s.mu_bar;
    s.mu_bar_plus = half + *s.mu_bar;
  }
  return s;
}

bool ricci_singular_mu(int m, int k, const Rational& mu) {
  if (mu == 0 || mu == 1) return true;
  const Rational x = Rational(m - 2) * mu + Rational(k);
  const Rational d = mu * x + Rational(k) * (mu - 1);
  return x == 0 || d == 0;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::deferred: return "deferred";
    case Regime::linear: return "linear";
    case Regime::sublinear: return "sublinear";
    case Regime::superlinear_subcritical: return "superlinear-subcritical";
    case Regime::critical: return "critical";
    case Regime::supercritical: return "supercritical";
    case Regime::q_negative_singular: return "q-negative-singular";
    case Regime::q_zero: return "q-zero";
    case Regime::q_linear: return "q-linear";
    case Regime::concave_convex: return "concave-convex";
  }
  return "unknown";
}

std::ostream& operator<<(std::ostream& os, Regime r) { return os << to_string(r); }

namespace {

Regime label_by_p(const Rational& p, const std::optional<Rational>& p_Y) {
  if (p < 1) return Regime::sublinear;
  if (p == 1) return Regime::linear;
  if (!p_Y || p < *p_Y) return Regime::superlinear_subcritical;
  if (p == *p_Y) return Regime::critical;
  return Regime::supercritical;
}

void describe(RegimeReport& r) {
  const bool mu_in_unit = r.mu > 0 && r.mu < 1;
  if (r.regime == Regime::deferred) {
    r.applicable_result = "mu = mu_sc: alpha vanishes and the equation becomes a gradient-type identity; not solved";
    r.strategy = "out-of-scope";
    return;
  }
  if (r.fiber_sign > 0) {
    r.applicable_result = "positive fiber curvature is outside the solver's hypotheses (S_F <= 0)";
    r.strategy = "out-of-scope";
    return;
  }
  if (r.fiber_sign == 0) {
    switch (r.regime) {
      case Regime::linear:
        r.applicable_result = "solvable iff lambda = lambda_1; psi is a positive multiple of u_1^alpha";
        r.strategy = "principal eigenpair";
        return;
      case Regime::sublinear:
        r.applicable_result =
            "necessary: sign(lambda) = sign(lambda_1); lambda > 0 with lambda_1 > 0 is solvable and unique; "
            "lambda < 0 needs lambda_1 < 0 close to 0 (unquantified)";
        r.strategy = "lambda > 0: sub eps*u_1, super M*e, monotone iteration; lambda < 0: empirical Newton attempt";
        return;
      case Regime::superlinear_subcritical:
        r.applicable_result = "solvable iff sign(lambda) = sign(kappa_p)";
        r.strategy = "constant bracket when max S_B < 0 and lambda < 0; otherwise minimizer of the Sobolev quotient "
                     "rescaled to lambda";
        return;
      case Regime::critical:
        r.applicable_result = "solvable when sign(lambda) = sign(kappa_pY) and kappa_pY < 1/K_m^2";
        r.strategy = "constant bracket when max S_B < 0 and lambda < 0; otherwise Sobolev-quotient minimizer "
                     "behind the sharp-constant gate";
        return;
      case Regime::supercritical:
        r.applicable_result = "solvable for lambda < 0 when max S_B < 0";
        r.strategy = "constant bracket (max S_B < 0, lambda < 0); otherwise out-of-scope";
        return;
      default: break;
    }
  }
  // fiber_sign < 0
  switch (r.regime) {
    case Regime::q_negative_singular:
      if (mu_in_unit) {
        r.applicable_result = "every lambda < 0 gives exactly one solution; lambda >= 0 excluded when lambda_1 <= 0";
        r.strategy = "constant bracket and monotone iteration for lambda < 0";
      } else if (r.mu == 0) {
        r.applicable_result = "necessary: lambda < lambda_1; the singular term keeps solutions away from zero";
        r.strategy = "potential shifted by lambda: sub eps*u_1, super M*e, monotone iteration";
      } else {
        r.applicable_result = "no existence statement beyond the necessary sign conditions";
        r.strategy = "constant bracket when admissible constants exist; otherwise out-of-scope";
      }
      return;
    case Regime::q_zero:
      r.applicable_result = "lambda < 0: solvable when mu in (0,1) or min S_B > 0; lambda = 0 with lambda_1 > 0 "
                            "is a linear problem";
      r.strategy = "constant bracket for lambda < 0; linear solve for lambda = 0";
      return;
    case Regime::q_linear:
      r.applicable_result = "necessary: sign(lambda) = sign(lambda_1 + S_F); same as the S_F = 0 problem with "
                            "potential S_B + S_F";
      r.strategy = "shifted potential, then the S_F = 0 routes";
      return;
    case Regime::concave_convex:
      r.applicable_result = "lambda_1 <= 0: solvable iff lambda < 0; lambda_1 > 0: solvable for lambda below a "
                            "threshold Lambda_bar > 0 and not above it";
      r.strategy = "sub eps*u_1; super gamma_lambda (lambda < 0) or M*e (lambda >= 0); monotone iteration";
      return;
    case Regime::linear:
      r.applicable_result = "necessary: lambda < lambda_1";
      r.strategy = "potential shifted by lambda: sub eps*u_1, super M*e, monotone iteration";
      return;
    case Regime::sublinear:
      r.applicable_result = "lambda <= 0 with min S_B > 0 is solvable";
      r.strategy = "constant bracket when admissible constants exist; otherwise out-of-scope";
      return;
    default:
      r.applicable_result = "lambda < 0 with max S_B < 0 is solvable when the bracket constants exist";
      r.strategy = "constant bracket when admissible constants exist; otherwise out-of-scope";
      return;
  }
}

}  // namespace

RegimeReport classify(int m, int k, const Rational& mu, int fiber_sign) {
  require_dimensions(m, k);
  RegimeReport r;
  r.m = m;
  r.k = k;
  r.mu = mu;
  r.fiber_sign = fiber_sign > 0 ? 1 : (fiber_sign < 0 ? -1 : 0);
  r.quad = quadratics(m, k, mu);
  r.domain = domain_D(m, k);
  r.special = special_mu(m, k);
  r.singular_mu = ricci_singular_mu(m, k, mu);
  if (mu == r.special.mu_sc) {
    r.regime = Regime::deferred;
    describe(r);
    return r;
  }
  const AlphaBeta ab = alpha_beta(m, k, mu);
  const Exponents ex = exponents(m, k, mu);
  r.alpha = ab.alpha;
  r.beta = ab.beta;
  r.p = ex.p;
  r.q = ex.q;
  const Rational& p = ex.p;
  const Rational& q = ex.q;
  if (r.fiber_sign < 0) {
    if (q < 0)
      r.regime = Regime::q_negative_singular;
    else if (q == 0)
      r.regime = Regime::q_zero;
    else if (q == 1)
      r.regime = Regime::q_linear;
    else if (q < 1 && p > 1)
      r.regime = Regime::concave_convex;
    else
      r.regime = label_by_p(p, r.special.p_Y);
  } else {
    r.regime = label_by_p(p, r.special.p_Y);
  }
  describe(r);
  return r;
}

int parse_fiber_sign(const std::string& text) {
  if (text == "-" || text == "negative" || text == "neg") return -1;
  if (text == "0" || text == "zero") return 0;
  if (text == "+" || text == "positive" || text == "pos") return 1;
  try {
    return sign(parse_rational(text));
  } catch (const ConfigError&) {
    throw ConfigError("S_F_sign: expected -, 0, + or a number, got '" + text + "'");
  }
}

}  // namespace bcwp::exponents

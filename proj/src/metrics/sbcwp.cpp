#include "bcwp/metrics/sbcwp.hpp"

#include "bcwp/errors.hpp"
#include "bcwp/exponents/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace bcwp::metrics {

using exponents::to_double;

void SbcwpCoefficients::require_regular() const {
  if (regular()) return;
  std::string names;
  for (const auto& s : singular) names += (names.empty() ? "" : ", ") + s;
  throw SingularParameterError("(psi,mu) Ricci coefficients undefined: mu equals " + names);
}

SbcwpCoefficients sbcwp_coefficients(int m, int k, const Rational& mu) {
  if (m < 3 || k < 1) throw DimensionError("(psi,mu) Ricci coefficients need m >= 3 and k >= 1");
  SbcwpCoefficients out;
  const Rational a = (m - 2) * mu + k;  // 1/alpha_lap
  const Rational d = mu * a + k * (mu - 1);
  if (mu == 0) out.singular.push_back("0");
  if (mu == 1) out.singular.push_back("1");
  if (a == 0) out.singular.push_back("mu_bar = -k/(m-2)");
  if (d == 0) out.singular.push_back("mu_bar_pm (root of mu[(m-2)mu+k] + k(mu-1))");
  if (a != 0) {
    out.alpha_lap = 1 / a;
    out.beta_lap = mu / a;
  }
  if (d != 0) {
    out.alpha_hess = -a / d;
    out.beta_hess = a * a / d;
  }
  return out;
}

namespace {

/// v^{-e} Lap v^e, the building block of the reduced operators
ScalarField reduced_laplacian(const geometry::Calculus& calc, const ScalarField& psi, double e) {
  return calc.laplace_beltrami(psi.pow(e)) * psi.pow(-e);
}

}  // namespace

RicciBlocks ricci_sbcwp(const SbcwpSpec& spec) {
  spec.validate();
  const SbcwpCoefficients co = sbcwp_coefficients(spec.m(), spec.k(), spec.mu);
  co.require_regular();
  const geometry::Calculus& calc = *spec.base.calculus;
  const double a_lap = to_double(*co.alpha_lap);
  const double b_lap = to_double(*co.beta_lap);
  const double a_hess = to_double(*co.alpha_hess);
  const double b_hess = to_double(*co.beta_hess);
  const double mu = spec.mu_value();
  const ScalarField& psi = spec.psi;

  TensorField2 bb = spec.base.ricci;
  TensorField2 h = calc.hessian(psi.pow(1.0 / a_hess));
  h.scale(b_hess * psi.pow(-1.0 / a_hess));
  bb += h;
  const ScalarField lap = reduced_laplacian(calc, psi, 1.0 / a_lap);
  TensorField2 g = calc.metric_tensor();
  g.scale(b_lap * lap);
  bb -= g;

  RicciBlocks blocks;
  blocks.base_block = std::move(bb);
  blocks.fiber_warp = (b_lap / mu) * psi.pow(-2.0 * (mu - 1.0)) * lap;
  blocks.fiber_nu = spec.fiber.ricci_constant();
  return blocks;
}

ReducedScalar scalar_sbcwp_reduced(const SbcwpSpec& spec) {
  spec.validate();
  const exponents::AlphaBeta ab = exponents::alpha_beta(spec.m(), spec.k(), spec.mu);
  const exponents::Exponents ex = exponents::exponents(spec.m(), spec.k(), spec.mu);
  const double alpha = to_double(ab.alpha);
  const double beta = to_double(ab.beta);
  const double p = to_double(ex.p);
  const double q = to_double(ex.q);

  ReducedScalar out;
  out.alpha = ab.alpha;
  out.beta = ab.beta;
  out.p = ex.p;
  out.q = ex.q;
  out.u = spec.psi.pow(1.0 / alpha);
  const ScalarField& u = out.u;
  ScalarField lhs = -beta * spec.base.calculus->laplace_beltrami(u) + spec.base.scalar * u;
  lhs += spec.fiber.scalar_curvature() * u.pow(q);
  out.S = lhs / u.pow(p);
  return out;
}

namespace {

void require_special(const SbcwpSpec& spec) {
  if (spec.m() < 2) throw DimensionError("special (psi,mu) form needs m >= 2");
  if (spec.mu != Rational(-spec.k(), spec.m() - 1))
    throw SingularParameterError("special (psi,mu) form applies only at mu = -k/(m-1)");
}

/// -k[1 + k/(m-1)] |grad psi|^2/psi^2
ScalarField special_gradient_term(const SbcwpSpec& spec) {
  const double m = spec.m();
  const double k = spec.k();
  const ScalarField& psi = spec.psi;
  return (-k * (1.0 + k / (m - 1.0))) * spec.base.calculus->gradient_sq(psi) / (psi * psi);
}

}  // namespace

ScalarField scalar_sbcwp_special(const SbcwpSpec& spec, const ScalarField& S) {
  spec.validate();
  require_special(spec);
  geometry::require_same_grid(S.grid(), spec.base.grid(), "scalar_sbcwp_special");
  const double e = -2.0 * spec.k() / (spec.m() - 1.0);
  const ScalarField& psi = spec.psi;
  ScalarField rhs = psi.pow(e) * (S - spec.fiber.scalar_curvature() * psi.pow(-2.0)) - spec.base.scalar;
  return special_gradient_term(spec) - rhs;
}

ScalarField scalar_sbcwp_special_value(const SbcwpSpec& spec) {
  spec.validate();
  require_special(spec);
  const double e = 2.0 * spec.k() / (spec.m() - 1.0);
  const ScalarField& psi = spec.psi;
  return spec.fiber.scalar_curvature() * psi.pow(-2.0) + psi.pow(e) * (special_gradient_term(spec) + spec.base.scalar);
}

ScalarField scalar_sbcwp(const SbcwpSpec& spec) {
  if (spec.m() >= 2 && spec.mu == Rational(-spec.k(), spec.m() - 1)) return scalar_sbcwp_special_value(spec);
  return scalar_sbcwp_reduced(spec).S;
}

EinsteinResidual einstein_residual(const SbcwpSpec& spec, double lambda, double nu) {
  RicciBlocks blocks = ricci_sbcwp(spec);
  const geometry::Calculus& calc = *spec.base.calculus;
  EinsteinResidual out;
  TensorField2 target = calc.metric_tensor();
  target.scale(lambda * spec.psi.pow(2.0 * spec.mu_value()));
  out.base = blocks.base_block - target;
  out.fiber = (-blocks.fiber_warp + nu) - lambda * (spec.psi * spec.psi);
  out.base_max = out.base.max_abs();
  out.fiber_max = out.fiber.max_abs();
  return out;
}

}  // namespace bcwp::metrics

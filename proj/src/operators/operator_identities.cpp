#include "bcwp/operators/operator_identities.hpp"

#include "bcwp/errors.hpp"

#include <algorithm>

namespace bcwp::operators {

using exponents::to_double;

OperatorSpec::OperatorSpec(std::vector<OperatorTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw ConfigError("operator spec: term list is empty");
  for (const auto& t : terms_) {
    zeta_ += t.r * t.a;
    eta_ += t.r * t.a * t.a;
  }
}

OperatorSpec OperatorSpec::operator+(const OperatorSpec& other) const {
  std::vector<OperatorTerm> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return OperatorSpec(std::move(all));
}

ReductionResult reduce_L(const OperatorSpec& spec) {
  if (spec.zeta() == 0) throw SingularParameterError("operator reduction undefined: zeta = 0");
  if (spec.eta() == 0) throw SingularParameterError("operator reduction undefined: eta = 0");
  ReductionResult out{spec.zeta(), spec.eta(), spec.zeta() / spec.eta(), spec.zeta() * spec.zeta() / spec.eta()};
  return out;
}

ScalarField apply_L(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  ScalarField out(calc.grid_ptr(), 0.0);
  for (const auto& t : spec.terms()) {
    const double a = to_double(t.a);
    out += to_double(t.r) * calc.laplace_beltrami(v.pow(a)) * v.pow(-a);
  }
  return out;
}

TensorField2 apply_H(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  TensorField2 out(calc.grid_ptr(), calc.grid().dim());
  for (const auto& t : spec.terms()) {
    const double a = to_double(t.a);
    TensorField2 h = calc.hessian(v.pow(a));
    h.scale(to_double(t.r) * v.pow(-a));
    out += h;
  }
  return out;
}

ScalarField identity_L(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  const double zeta = to_double(spec.zeta());
  const double eta = to_double(spec.eta());
  return (eta - zeta) * calc.gradient_sq(v) / (v * v) + zeta * calc.laplace_beltrami(v) / v;
}

TensorField2 identity_H(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  const double zeta = to_double(spec.zeta());
  const double eta = to_double(spec.eta());
  TensorField2 dd = calc.symmetric_product(v, v);
  dd.scale((eta - zeta) * v.pow(-2.0));
  TensorField2 h = calc.hessian(v);
  h.scale(zeta * v.pow(-1.0));
  dd += h;
  return dd;
}

ScalarField reduced_L(const ReductionResult& red, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  const double e = 1.0 / to_double(red.alpha);
  return to_double(red.beta) * calc.laplace_beltrami(v.pow(e)) * v.pow(-e);
}

TensorField2 reduced_H(const ReductionResult& red, const Calculus& calc, const ScalarField& v) {
  v.require_positive("v");
  const double e = 1.0 / to_double(red.alpha);
  TensorField2 h = calc.hessian(v.pow(e));
  h.scale(to_double(red.beta) * v.pow(-e));
  return h;
}

double ReductionReport::worst() const {
  double w = std::max(identity_L, identity_H);
  if (reduction_L) w = std::max(w, *reduction_L);
  if (reduction_H) w = std::max(w, *reduction_H);
  return w;
}

ReductionReport verify_reductions(const Calculus& calc, const ScalarField& v, const OperatorSpec& spec) {
  ReductionReport rep;
  const ScalarField l = apply_L(spec, calc, v);
  const TensorField2 h = apply_H(spec, calc, v);
  rep.identity_L = (l - identity_L(spec, calc, v)).max_abs();
  rep.identity_H = (h - identity_H(spec, calc, v)).max_abs();
  rep.trace_gap = (calc.trace(h) - l).max_abs();
  if (spec.reducible()) {
    rep.reduction = reduce_L(spec);
    rep.reduction_L = (l - reduced_L(*rep.reduction, calc, v)).max_abs();
    rep.reduction_H = (h - reduced_H(*rep.reduction, calc, v)).max_abs();
  }
  return rep;
}

OperatorSpec psi_mu_laplacian_terms(int m, int k, const Rational& mu) {
  // c = psi^mu, w = psi: extra |grad psi|^2/psi^2 coefficient G on top of Lap c/c
  const Rational g = (m - 3) * mu * mu + k * mu;
  return OperatorSpec({{Rational(1), mu}, {g / 2, Rational(2)}, {-g, Rational(1)}});
}

OperatorSpec psi_mu_hessian_terms(int m, int k, const Rational& mu) {
  const Rational e = 2 * (m - 2) * mu * mu + 2 * k * mu;
  return OperatorSpec({{Rational(-(m - 2)), mu}, {Rational(-k), Rational(1)}, {e / 2, Rational(2)}, {-e, Rational(1)}});
}

OperatorSpec psi_mu_scalar_terms(int m, int k, const Rational& mu) {
  const Rational g = (m - 4) * (m - 1) * mu * mu + 2 * k * (m - 2) * mu + k * (k - 1);
  return OperatorSpec(
      {{Rational(2 * (m - 1)), mu}, {Rational(2 * k), Rational(1)}, {g / 2, Rational(2)}, {-g, Rational(1)}});
}

}  // namespace bcwp::operators

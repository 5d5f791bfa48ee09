#include "bcwp/elliptic/problem.hpp"

#include "bcwp/errors.hpp"

#include <Eigen/Sparse>

#include <cmath>

namespace bcwp::elliptic {

namespace {

std::shared_ptr<const Calculus> central2_of(const metrics::BaseManifold& base) {
  if (base.scheme() == geometry::Scheme::central2) return base.calculus;
  return std::make_shared<const Calculus>(base.metric(), geometry::Scheme::central2);
}

}  // namespace

PdeProblem PdeProblem::on_base(const metrics::BaseManifold& base, double beta, double S_F, double p, double q,
                               double lambda) {
  return on_base(base, base.scalar, beta, S_F, p, q, lambda);
}

PdeProblem PdeProblem::on_base(const metrics::BaseManifold& base, const ScalarField& S_B, double beta,
                               double S_F, double p, double q, double lambda) {
  PdeProblem problem;
  problem.calculus = central2_of(base);
  problem.beta = beta;
  problem.S_B = S_B;
  problem.S_F = S_F;
  problem.p = p;
  problem.q = q;
  problem.lambda = lambda;
  problem.validate();
  return problem;
}

void PdeProblem::validate() const {
  if (!calculus) throw ConfigError("PdeProblem: missing base");
  if (calculus->scheme() != geometry::Scheme::central2)
    throw ConfigError("PdeProblem: the elliptic solver uses the central2 discretization");
  if (!calculus->metric().riemannian()) throw ConfigError("PdeProblem: base metric must be Riemannian");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("PdeProblem: beta must be positive");
  if (!(S_F <= 0.0)) throw ConfigError("PdeProblem: S_F must be <= 0");
  if (!std::isfinite(p) || !std::isfinite(q) || !std::isfinite(lambda))
    throw ConfigError("PdeProblem: p, q and lambda must be finite");
  if (S_B.size() == 0 || !(S_B.grid() == grid())) throw DimensionError("PdeProblem: S_B is not on the base grid");
}

PdeProblem PdeProblem::with_lambda(double value) const {
  PdeProblem out = *this;
  out.lambda = value;
  return out;
}

double PdeProblem::f(double t) const {
  double v = lambda * std::pow(t, p);
  if (S_F != 0.0) v -= S_F * std::pow(t, q);
  return v;
}

double PdeProblem::f_prime(double t) const {
  double v = lambda * p * std::pow(t, p - 1.0);
  if (S_F != 0.0) v -= S_F * q * std::pow(t, q - 1.0);
  return v;
}

ScalarField PdeProblem::f(const ScalarField& u) const {
  return u.map([this](double t) { return f(t); });
}

EllipticOperator::EllipticOperator(std::shared_ptr<const Calculus> calculus, double beta, ScalarField S_B)
    : calculus_(std::move(calculus)), beta_(beta), S_B_(std::move(S_B)) {
  if (calculus_->scheme() != geometry::Scheme::central2)
    throw ConfigError("EllipticOperator: central2 discretization required");
}

EllipticOperator::EllipticOperator(const PdeProblem& problem)
    : EllipticOperator(problem.calculus, problem.beta, problem.S_B) {}

ScalarField EllipticOperator::apply(const ScalarField& u) const {
  ScalarField out = calculus_->laplace_beltrami(u);
  out *= -beta_;
  out += S_B_ * u;
  return out;
}

SparseMatrix EllipticOperator::system(double shift) const {
  return system(ScalarField(S_B_.grid_ptr(), shift));
}

SparseMatrix EllipticOperator::system(const ScalarField& coefficient) const {
  const auto& w = weights();
  Eigen::VectorXd diag(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) diag[static_cast<Eigen::Index>(i)] = w[i] * (S_B_[i] + coefficient[i]);
  SparseMatrix a = beta_ * calculus_->stiffness();
  for (Eigen::Index i = 0; i < diag.size(); ++i) a.coeffRef(i, i) += diag[i];
  a.makeCompressed();
  return a;
}

ScalarField residual(const PdeProblem& problem, const ScalarField& u) {
  return EllipticOperator(problem).apply(u) - problem.f(u);
}

double residual_inf(const PdeProblem& problem, const ScalarField& u) { return residual(problem, u).max_abs(); }

}  // namespace bcwp::elliptic

#pragma once

#include "bcwp/geometry/calculus.hpp"
#include "bcwp/metrics/specs.hpp"

#include <memory>

namespace bcwp::elliptic {

using geometry::Calculus;
using geometry::GridPtr;
using geometry::ScalarField;
using geometry::SparseMatrix;

/// -beta Lap u + S_B u = lambda u^p - S_F u^q on a closed Riemannian base.
///
/// The discrete operator is always the central2 one: Lap = -W^{-1} K with K symmetric, so the
/// operator is self-adjoint for the weights W and every linear solve is symmetric.
struct PdeProblem {
  std::shared_ptr<const Calculus> calculus;
  double beta = 1.0;
  ScalarField S_B;
  double S_F = 0.0;
  double p = 1.0;
  double q = 1.0;
  double lambda = 0.0;

  /// Re-discretizes with central2 when the base carries another scheme.
  static PdeProblem on_base(const metrics::BaseManifold& base, double beta, double S_F, double p, double q,
                            double lambda);
  static PdeProblem on_base(const metrics::BaseManifold& base, const ScalarField& S_B, double beta, double S_F,
                            double p, double q, double lambda);

  const geometry::GridManifold& grid() const { return calculus->grid(); }
  const GridPtr& grid_ptr() const { return calculus->grid_ptr(); }
  std::size_t size() const { return S_B.size(); }
  /// beta > 0, S_F <= 0, finite exponents, Riemannian central2 base, S_B on the base grid.
  void validate() const;

  PdeProblem with_lambda(double value) const;

  /// f(t) = lambda t^p - S_F t^q; the q term is dropped when S_F = 0 so t^q never multiplies zero.
  double f(double t) const;
  double f_prime(double t) const;
  ScalarField f(const ScalarField& u) const;
};

/// L = -beta Lap + S_B in its symmetric form A = beta K + W diag(S_B).
class EllipticOperator {
 public:
  EllipticOperator(std::shared_ptr<const Calculus> calculus, double beta, ScalarField S_B);
  explicit EllipticOperator(const PdeProblem& problem);

  ScalarField apply(const ScalarField& u) const;
  /// beta K + W diag(S_B + shift)
  SparseMatrix system(double shift) const;
  /// beta K + W diag(S_B + coefficient)
  SparseMatrix system(const ScalarField& coefficient) const;
  const std::vector<double>& weights() const { return calculus_->weights(); }
  const Calculus& calculus() const { return *calculus_; }
  double beta() const { return beta_; }
  const ScalarField& S_B() const { return S_B_; }

 private:
  std::shared_ptr<const Calculus> calculus_;
  double beta_;
  ScalarField S_B_;
};

/// L u - f(u), pointwise.
ScalarField residual(const PdeProblem& problem, const ScalarField& u);
double residual_inf(const PdeProblem& problem, const ScalarField& u);

}  // namespace bcwp::elliptic

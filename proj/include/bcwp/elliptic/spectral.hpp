#pragma once

#include "bcwp/elliptic/problem.hpp"

#include <cstdint>

namespace bcwp::elliptic {

struct EigenResult {
  double lambda1 = 0.0;
  ScalarField u1;  ///< positive, sup-norm 1
  double residual = 0.0;  ///< |L u1 - lambda1 u1|_inf
  int iterations = 0;
};

struct EigenOptions {
  double tolerance = 1e-11;
  int max_iterations = 20000;
};

/// Smallest eigenvalue of L = -beta Lap + S_B by shifted inverse power iteration.
/// The shift sits below min S_B, which bounds lambda1 from below, so one LDLT factorization of
/// A - sigma W serves every step. Throws ConvergenceError past the iteration budget and Error if
/// the limit is not of one sign.
EigenResult principal_eigenpair(const EllipticOperator& op, const EigenOptions& options = {});
EigenResult principal_eigenpair(const PdeProblem& problem, const EigenOptions& options = {});

/// The solution e of L e = 1; requires lambda1 > 0 (then e > 0).
ScalarField unit_response(const EllipticOperator& op);

struct KappaOptions {
  double tolerance = 1e-9;  ///< on the PDE residual of (beta kappa, minimizer)
  int max_iterations = 50000;
  /// Relative size of a deterministic perturbation of the starting point; zero starts at u1.
  double perturbation = 0.0;
  std::uint64_t seed = 1;
};

struct KappaResult {
  double kappa = 0.0;
  ScalarField minimizer;  ///< sum W |v|^{p+1} = 1, v >= 0
  double residual = 0.0;  ///< |-beta Lap v + S_B v - beta kappa v^p|_inf
  int iterations = 0;
};

/// inf over sum W |v|^{p+1} = 1 of  v^T K v + sum W (S_B/beta) v^2, by H^1-preconditioned gradient
/// descent on the scale-free quotient with renormalization after each step.
/// Requires 1 < p, and p <= p_Y = (m+2)/(m-2) when the base dimension m >= 3.
KappaResult kappa_p(const EllipticOperator& op, double p, const KappaOptions& options = {});

/// Volume of the unit m-sphere, 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);

struct SharpConstant {
  int m = 0;
  double omega = 0.0;
  double K = 0.0;  ///< sqrt(4 / (m(m-2) omega^{2/m}))
  double threshold = 0.0;  ///< 1/K^2
};
/// Requires m >= 3.
SharpConstant sharp_constant(int m);
/// kappa_{p_Y} < 1/K_m^2
bool critical_condition(const SharpConstant& sharp, double kappa_pY);

}  // namespace bcwp::elliptic

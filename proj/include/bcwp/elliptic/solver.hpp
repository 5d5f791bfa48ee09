#pragma once

#include "bcwp/elliptic/nonlinearity.hpp"
#include "bcwp/elliptic/problem.hpp"
#include "bcwp/elliptic/spectral.hpp"

#include <optional>
#include <string>

namespace bcwp::elliptic {

enum class CertificateKind { bracket, sub_super, variational, linear, newton };
std::string to_string(CertificateKind kind);

/// Order interval sub <= super with L(sub) <= f(sub) and L(super) >= f(super), and the shift nu
/// that makes t -> f(t) + nu t nondecreasing on [min sub, max super] with S_B + nu >= 0.
/// Variational, linear and Newton solutions carry no order interval; sub and super are then empty.
struct Certificate {
  CertificateKind kind = CertificateKind::bracket;
  ScalarField sub;
  ScalarField super;
  double nu = 0.0;
  double a0 = 0.0, a1 = 0.0;  ///< bracket constants
  double epsilon = 0.0, M = 0.0;  ///< sub = epsilon u1, super = M e
  std::string construction;

  bool has_order_interval() const { return sub.size() > 0; }
};

struct CertificateOptions {
  bool allow_bracket = true;
  bool allow_eigen = true;
  double eps_lo = 1e-8, eps_hi = 1.0;
  double M_lo = 1.0, M_hi = 1e8;
  double bracket_lo = 1e-8, bracket_hi = 1e8;
  int points_per_decade = 100;
  /// Multiplies the epsilon found by the scan (values < 1 give a smaller, still valid, subsolution).
  double eps_factor = 1.0;
  /// Multiplies the M found by the scan when it stays admissible.
  double M_factor = 1.0;
};

/// Largest violation of the sub/super inequalities and of sub <= super, scaled by max(1, |f|_inf).
double certificate_violation(const PdeProblem& problem, const Certificate& certificate);

/// nu = max(0, -min S_B) + max(0, -min f') over [lo, hi], plus 1 if S_B + nu vanishes identically.
double choose_nu(const PdeProblem& problem, double lo, double hi);

/// Constant bracket a0 <= a1 with f(a0)/a0 >= max S_B and f(a1)/a1 <= min S_B, tried first when allowed,
/// then (lambda1 > 0) sub = epsilon u1 and super = M e with L e = 1. `why` receives the reason for failure.
std::optional<Certificate> construct_sub_super(const PdeProblem& problem, const EigenResult& eig,
                                               const CertificateOptions& options = {}, std::string* why = nullptr);

struct MonotoneOptions {
  double tolerance = 1e-10;  ///< on the sup-norm change of successive iterates
  int max_iterations = 100000;
  double containment_tolerance = 1e-9;
};

struct MonotoneResult {
  ScalarField lower;  ///< limit from the subsolution
  ScalarField upper;  ///< limit from the supersolution
  double gap = 0.0;  ///< |upper - lower|_inf
  int iterations_lower = 0, iterations_upper = 0;
  double residual_lower = 0.0, residual_upper = 0.0;
  /// largest decrease along the sequence from below or increase from above
  double monotonicity_violation = 0.0;
  bool converged = false;
};

/// u_{n+1} = (L + nu)^{-1} (f(u_n) + nu u_n) from both ends of the order interval.
/// Throws CertificateViolation if an iterate leaves [sub, super].
MonotoneResult monotone_iteration(const PdeProblem& problem, const Certificate& certificate,
                                  const MonotoneOptions& options = {});

struct NewtonResult {
  ScalarField u;
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;
  std::string diagnostics;
};

/// Damped Newton on L u - f(u) = 0 keeping u > 0; no certificate, success is empirical.
NewtonResult newton_attempt(const PdeProblem& problem, ScalarField initial, int max_iterations = 200,
                            double tolerance = 1e-11);

/// t u0 with t = (lambda/lambda0)^{1/(1-p)}; requires p != 1 and lambda, lambda0 of one nonzero sign.
ScalarField scale_solution(const ScalarField& u0, double lambda0, double lambda, double p);
double scale_factor(double lambda0, double lambda, double p);

}  // namespace bcwp::elliptic

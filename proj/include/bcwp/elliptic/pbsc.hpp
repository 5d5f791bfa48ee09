#pragma once

#include "bcwp/elliptic/solver.hpp"
#include "bcwp/exponents/classifier.hpp"
#include "bcwp/metrics/specs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcwp::elliptic {

/// `inconclusive`: no certificate path succeeded and nothing rules a solution out.
enum class SolveStatus { converged, nonexistence_certified, out_of_scope, inconclusive };
std::string to_string(SolveStatus status);
/// 0 converged, 2 nonexistence certified, 3 out of scope, 1 otherwise.
int exit_code(SolveStatus status);

struct SolveOptions {
  EigenOptions eigen;
  KappaOptions kappa;
  CertificateOptions certificate;
  MonotoneOptions monotone;
  double residual_tolerance = 1e-6;
  /// Attempt damped Newton where no theorem supplies a certificate (lambda < 0, lambda1 < 0, sublinear).
  bool allow_newton = true;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::inconclusive;
  ScalarField u;
  double residual_inf = 0.0;
  int iterations = 0;
  std::optional<Certificate> certificate;
  std::optional<NonexistenceCertificate> nonexistence;
  std::optional<MonotoneResult> monotone;
  EigenResult eigen;
  std::optional<double> kappa;  ///< kappa_p of the variational route
  std::string route;
  std::string message;
};

/// Solves -beta Lap u + S_B u = lambda u^p - S_F u^q:
/// eigenpair -> eigen-sign and envelope nonexistence tests -> linear case -> constant bracket or
/// (lambda1 > 0) epsilon u1 / M e pair with monotone iteration -> variational route through kappa_p
/// for S_F u^q absent or linear and 1 < p <= p_Y (critical only under kappa < 1/K_m^2 or kappa < 0)
/// -> empirical Newton for the sublinear lambda < 0, lambda1 < 0 case.
/// Supercritical and critical cases without a certificate path are reported out of scope.
SolveOutcome solve_problem(const PdeProblem& problem, const SolveOptions& options = {});

struct PbscOutcome {
  exponents::RegimeReport regime;
  SolveOutcome solve;
  double alpha = 0.0;
  ScalarField psi;  ///< u^alpha
  /// |S - lambda|_inf for the scalar curvature of the (psi, mu) metric evaluated on the base
  std::optional<double> scalar_check;
};

/// Constant scalar curvature lambda for c = psi^mu, w = psi on base x fiber. The base operators
/// are central2 for the check to see the same discrete equation the solver solved.
PbscOutcome solve_pbsc(const metrics::BaseManifold& base, const geometry::FiberModel& fiber,
                       const exponents::Rational& mu, double lambda, const SolveOptions& options = {});

/// The PDE of a (psi, mu) metric: beta, p, q from the exponent algebra, S_B from the base, S_F from the fiber.
PdeProblem pbsc_problem(const metrics::BaseManifold& base, const geometry::FiberModel& fiber,
                        const exponents::Rational& mu, double lambda);

struct SweepPoint {
  double lambda = 0.0;
  SolveStatus status = SolveStatus::inconclusive;
  std::string route;
  double residual = 0.0;
  double u_max = 0.0;
  bool refinement = false;  ///< added by bisection
};

struct SweepOptions {
  SolveOptions solve;
  int bisections = 20;
  double bracket_tolerance = 1e-10;
};

struct SweepReport {
  std::vector<SweepPoint> points;  ///< sorted by lambda
  bool down_set = true;  ///< no success above a failure
  std::optional<double> last_success, first_failure;
  std::optional<double> estimate;  ///< midpoint of the final bracket
  double lambda1 = 0.0;
  std::optional<double> lambda_bar;  ///< upper bound for the supremum of solvable lambda
};

/// sup over t > 0 of lambda1 t^{1-p} + S_F t^{q-p}: the least lambda_bar with
/// lambda1 t <= lambda_bar t^p - S_F t^q for all t > 0. Requires p > 1 and S_F < 0, q < p.
double lambda_bar_bound(double lambda1, double S_F, double p, double q);

/// Solves on every grid value, then bisects between the last success and the first failure.
SweepReport lambda_sweep(const PdeProblem& problem, std::vector<double> lambdas, const SweepOptions& options = {});

}  // namespace bcwp::elliptic

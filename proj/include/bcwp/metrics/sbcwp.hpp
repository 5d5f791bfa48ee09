#pragma once

#include "bcwp/metrics/closed_forms.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcwp::metrics {

/// Coefficients of the reduced Ricci formula of a (psi,mu) metric:
///   alpha_lap = 1/((m-2)mu + k),   beta_lap = mu alpha_lap,
///   alpha_hess = -[(m-2)mu + k]/D,  beta_hess = [(m-2)mu + k]^2/D,  D = mu[(m-2)mu + k] + k(mu - 1).
/// mu in {0, 1, mu_bar, mu_bar_pm} is excluded; a coefficient whose denominator vanishes is absent.
struct SbcwpCoefficients {
  std::optional<Rational> alpha_lap, beta_lap, alpha_hess, beta_hess;
  std::vector<std::string> singular;  ///< names of the excluded values mu hits

  bool regular() const { return singular.empty(); }
  /// Throws SingularParameterError naming every excluded value hit.
  void require_regular() const;
};

/// Requires m >= 3, k >= 1.
SbcwpCoefficients sbcwp_coefficients(int m, int k, const Rational& mu);

/// Base block  Ric_B + beta_hess psi^{-1/alpha_hess} H^{psi^{1/alpha_hess}}
///             - beta_lap psi^{-1/alpha_lap} Lap(psi^{1/alpha_lap}) g_B,
/// fiber warp  X = psi^{-2(mu-1)} (beta_lap/mu) psi^{-1/alpha_lap} Lap(psi^{1/alpha_lap}).
RicciBlocks ricci_sbcwp(const SbcwpSpec& spec);

struct ReducedScalar {
  ScalarField u;  ///< psi^{1/alpha}
  ScalarField S;
  Rational alpha, beta, p, q;
};

/// S solved pointwise from  -beta Lap u + S_B u = S u^p - S_F u^q  with u = psi^{1/alpha}.
/// Throws SingularParameterError at mu = -k/(m-1).
ReducedScalar scalar_sbcwp_reduced(const SbcwpSpec& spec);

/// At mu = -k/(m-1):  LHS - RHS of
///   -k[1 + k/(m-1)] |grad psi|^2/psi^2 = psi^{-2k/(m-1)} [S - S_F psi^{-2}] - S_B.
ScalarField scalar_sbcwp_special(const SbcwpSpec& spec, const ScalarField& S);

/// The same display solved for S.
ScalarField scalar_sbcwp_special_value(const SbcwpSpec& spec);

/// Reduced form when mu != -k/(m-1), special form otherwise.
ScalarField scalar_sbcwp(const SbcwpSpec& spec);

/// Residuals of the Einstein system with constant lambda and fiber constant nu:
///   base:  (base block) - lambda psi^{2mu} g_B,
///   fiber: nu - X - lambda psi^2.
/// With lambda = 0 they are the Ricci blocks themselves.
struct EinsteinResidual {
  TensorField2 base;
  ScalarField fiber;
  double base_max = 0.0;
  double fiber_max = 0.0;
};
EinsteinResidual einstein_residual(const SbcwpSpec& spec, double lambda, double nu);

}  // namespace bcwp::metrics

#pragma once

#include "bcwp/elliptic/problem.hpp"
#include "bcwp/elliptic/spectral.hpp"

#include <optional>
#include <string>

namespace bcwp::elliptic {

/// Zeros of f(t) = lambda t^p - S_F t^q and the shape of f(t)/t.
struct Nonlinearity {
  double lambda = 0.0, S_F = 0.0, p = 1.0, q = 1.0;
  double S_B_min = 0.0;
  /// (S_F/lambda)^{1/(p-q)} when lambda < 0, S_F < 0, p != q
  std::optional<double> gamma;
  /// largest positive zero of f(t) - S_B_min t; every solution satisfies |u|_inf <= gamma_tilde
  std::optional<double> gamma_tilde;
  /// f(t)/t = lambda t^{p-1} - S_F t^{q-1} with both terms nonincreasing and one strictly decreasing
  bool quotient_decreasing = false;
  std::string quotient_reason;
};

Nonlinearity nonlinearity_analysis(double lambda, double S_F, double p, double q, double S_B_min);
Nonlinearity nonlinearity_analysis(const PdeProblem& problem);

/// E(u) = f(u)/u = lambda u^{p-1} - S_F u^{q-1}, the envelope tested against S_B.
struct EnvelopeExtremum {
  double value = 0.0;
  bool attained = false;  ///< false when the extremum is only a limit at u -> 0 or u -> inf
  double at = 0.0;  ///< minimizer or maximizer when attained
};
/// inf and sup of E over (0, inf): limits at the ends in closed form, the interior from a 10^4
/// point log grid on [1e-12, 1e12] refined by golden-section-type search.
EnvelopeExtremum envelope_inf(const PdeProblem& problem);
EnvelopeExtremum envelope_sup(const PdeProblem& problem);

struct NonexistenceCertificate {
  std::string kind;  ///< "envelope-max", "envelope-min", "eigen-sign"
  std::string statement;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// Envelope test: integrating the equation gives sum W u (S_B - E(u)) = 0, impossible when
/// S_B < E(u) everywhere (max S_B <= inf E with a margin, or with inf E not attained) or the mirror.
std::optional<NonexistenceCertificate> nonexistence_check(const PdeProblem& problem, double margin = 1e-9);

/// Eigen-sign test: pairing the equation with u1 gives lambda1 <u, u1> = <f(u), u1>, impossible when
/// lambda1 <= 0 and f > 0 on (0, inf), when lambda1 >= 0 and f < 0, or when f = 0 and lambda1 != 0.
/// |lambda1| <= zero_tolerance counts as zero.
std::optional<NonexistenceCertificate> eigen_sign_check(const PdeProblem& problem, double lambda1,
                                                        double zero_tolerance = 1e-10);

}  // namespace bcwp::elliptic

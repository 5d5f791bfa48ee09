#pragma once

#include "bcwp/exponents/rational.hpp"
#include "bcwp/geometry/calculus.hpp"

#include <optional>
#include <vector>

namespace bcwp::operators {

using exponents::Rational;
using geometry::Calculus;
using geometry::ScalarField;
using geometry::TensorField2;

struct OperatorTerm {
  Rational r;
  Rational a;
};

/// Term list of  L v = sum r_i Lap(v^{a_i})/v^{a_i}  and  H v = sum r_i H^{v^{a_i}}/v^{a_i},
/// with zeta = sum r_i a_i and eta = sum r_i a_i^2 kept exact.
class OperatorSpec {
 public:
  explicit OperatorSpec(std::vector<OperatorTerm> terms);

  const std::vector<OperatorTerm>& terms() const { return terms_; }
  const Rational& zeta() const { return zeta_; }
  const Rational& eta() const { return eta_; }
  bool reducible() const { return zeta_ != 0 && eta_ != 0; }

  /// Concatenated term lists.
  OperatorSpec operator+(const OperatorSpec& other) const;

 private:
  std::vector<OperatorTerm> terms_;
  Rational zeta_;
  Rational eta_;
};

/// alpha = zeta/eta, beta = zeta^2/eta; beta * eta = zeta^2 exactly.
struct ReductionResult {
  Rational zeta, eta, alpha, beta;
};

/// Throws SingularParameterError when zeta = 0 or eta = 0.
ReductionResult reduce_L(const OperatorSpec& spec);

/// Term-by-term evaluation. v must be positive.
ScalarField apply_L(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v);
TensorField2 apply_H(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v);

/// (eta - zeta)|grad v|^2/v^2 + zeta Lap v/v
ScalarField identity_L(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v);
/// (eta - zeta) dv dv/v^2 + zeta H^v/v
TensorField2 identity_H(const OperatorSpec& spec, const Calculus& calc, const ScalarField& v);

/// beta Lap(v^{1/alpha})/v^{1/alpha}
ScalarField reduced_L(const ReductionResult& red, const Calculus& calc, const ScalarField& v);
/// beta H^{v^{1/alpha}}/v^{1/alpha}
TensorField2 reduced_H(const ReductionResult& red, const Calculus& calc, const ScalarField& v);

/// Max residuals of the identities and reductions. Reductions are skipped (empty) when the
/// spec is not reducible.
struct ReductionReport {
  double identity_L = 0.0;
  double identity_H = 0.0;
  std::optional<double> reduction_L;
  std::optional<double> reduction_H;
  /// |trace(apply_H) - apply_L|_inf; a discretization quantity, not an identity residual.
  double trace_gap = 0.0;
  std::optional<ReductionResult> reduction;

  double worst() const;
};
ReductionReport verify_reductions(const Calculus& calc, const ScalarField& v, const OperatorSpec& spec);

/// Term lists behind the (psi,mu) curvature formulas, acting on psi.
/// Laplacian part of the Ricci base block: Lap c/c + (m-3)|grad c|^2/c^2 + k<grad w, grad c>/(wc).
OperatorSpec psi_mu_laplacian_terms(int m, int k, const Rational& mu);
/// Hessian part: -(m-2)H^c/c - k H^w/w + 2(m-2)dc dc/c^2 + k(dc dw + dw dc)/(wc).
OperatorSpec psi_mu_hessian_terms(int m, int k, const Rational& mu);
/// Scalar curvature: 2(m-1)Lap c/c + 2k Lap w/w + (m-4)(m-1)|grad c|^2/c^2
///                   + 2k(m-2)<grad w, grad c>/(wc) + k(k-1)|grad w|^2/w^2.
OperatorSpec psi_mu_scalar_terms(int m, int k, const Rational& mu);

}  // namespace bcwp::operators

#include "bcwp/elliptic/pbsc.hpp"

#include "bcwp/errors.hpp"
#include "bcwp/metrics/sbcwp.hpp"

#include <cmath>

namespace bcwp::elliptic {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

// Accepts a candidate solution if it is positive and solves the discrete equation to tolerance.
bool accept(const PdeProblem& pb, const ScalarField& u, const SolveOptions& opt, SolveOutcome& out) {
  if (u.min() <= 0.0) {
    out.message += "candidate is not positive; ";
    return false;
  }
  const double r = residual_inf(pb, u);
  if (!(r <= opt.residual_tolerance)) {
    out.message += "residual " + std::to_string(r) + " above tolerance; ";
    return false;
  }
  out.u = u;
  out.residual_inf = r;
  out.status = SolveStatus::converged;
  return true;
}

// Constant t with f(t)/t closest to mean S_B, a starting point for Newton.
double constant_guess(const PdeProblem& pb) {
  double mean = 0.0;
  for (std::size_t i = 0; i < pb.size(); ++i) mean += pb.S_B[i];
  mean /= static_cast<double>(pb.size());
  double best = 1.0, gap = INFINITY;
  for (int i = 0; i <= 2400; ++i) {
    const double t = std::pow(10.0, -12.0 + i * 0.01);
    const double g = std::abs(pb.f(t) / t - mean);
    if (g < gap) {
      gap = g;
      best = t;
    }
  }
  return best;
}

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::nonexistence_certified: return "nonexistence-certified";
    case SolveStatus::out_of_scope: return "regime-out-of-scope";
    case SolveStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return 0;
    case SolveStatus::nonexistence_certified: return 2;
    case SolveStatus::out_of_scope: return 3;
    case SolveStatus::inconclusive: return 1;
  }
  return 1;
}

SolveOutcome solve_problem(const PdeProblem& pb, const SolveOptions& opt) {
  pb.validate();
  SolveOutcome out;
  out.eigen = principal_eigenpair(pb, opt.eigen);
  const double lambda1 = out.eigen.lambda1;

  if (auto c = eigen_sign_check(pb, lambda1)) {
    out.status = SolveStatus::nonexistence_certified;
    out.nonexistence = c;
    out.route = "eigen-sign";
    return out;
  }
  if (auto c = nonexistence_check(pb)) {
    out.status = SolveStatus::nonexistence_certified;
    out.nonexistence = c;
    out.route = "envelope";
    return out;
  }

  // f linear in u: the eigen-sign test passed, so the shifted lambda1 vanishes and u1 solves
  const bool linear = pb.p == 1.0 && (pb.S_F == 0.0 || pb.q == 1.0);
  if (linear) {
    out.route = "linear";
    Certificate c;
    c.kind = CertificateKind::linear;
    c.construction = "u = u1, unique up to a positive factor";
    out.certificate = c;
    if (accept(pb, out.eigen.u1, opt, out)) return out;
    out.status = SolveStatus::inconclusive;
    return out;
  }

  std::string why;
  try {
    if (auto c = construct_sub_super(pb, out.eigen, opt.certificate, &why)) {
      out.certificate = c;
      out.route = to_string(c->kind);
      const MonotoneResult mr = monotone_iteration(pb, *c, opt.monotone);
      out.monotone = mr;
      out.iterations = mr.iterations_lower + mr.iterations_upper;
      if (mr.converged && accept(pb, mr.lower, opt, out)) return out;
      if (!mr.converged) out.message += "monotone iteration hit its budget; ";
    } else {
      out.message += why + "; ";
    }
  } catch (const CertificateViolation& e) {
    out.message += std::string(e.what()) + "; ";
  }
  out.certificate.reset();

  const int m = pb.grid().dim();
  const std::optional<double> pY = m >= 3 ? std::optional<double>((m + 2.0) / (m - 2.0)) : std::nullopt;
  const bool pure_power = pb.S_F == 0.0 || pb.q == 1.0;
  if (pure_power && pb.p > 1.0) {
    if (pY && pb.p > *pY && !near(pb.p, *pY)) {
      out.status = SolveStatus::out_of_scope;
      out.route = "supercritical";
      out.message += "supercritical exponent without a constant bracket";
      return out;
    }
    // a linear S_F term moves into the operator
    const ScalarField S = pb.q == 1.0 ? pb.S_B + pb.S_F : pb.S_B;
    const EllipticOperator op(pb.calculus, pb.beta, S);
    KappaOptions ko = opt.kappa;
    if (pY && near(pb.p, *pY)) ko.tolerance = std::max(ko.tolerance, 1e-9);
    const KappaResult kr = kappa_p(op, pY && near(pb.p, *pY) ? *pY : pb.p, ko);
    out.kappa = kr.kappa;
    out.iterations = kr.iterations;
    out.route = "variational";
    if (pY && near(pb.p, *pY) && kr.kappa > 0.0 && !critical_condition(sharp_constant(m), kr.kappa)) {
      out.status = SolveStatus::out_of_scope;
      out.message += "critical exponent with kappa >= 1/K_m^2";
      return out;
    }
    const double lambda0 = pb.beta * kr.kappa;
    if (lambda0 == 0.0 || (lambda0 > 0.0) != (pb.lambda > 0.0) || pb.lambda == 0.0) {
      out.status = SolveStatus::inconclusive;
      out.message += "sign of lambda differs from that of kappa_p";
      return out;
    }
    Certificate c;
    c.kind = CertificateKind::variational;
    c.construction = "minimizer of the Sobolev quotient scaled by (lambda/(beta kappa))^(1/(1-p))";
    out.certificate = c;
    if (accept(pb, scale_solution(kr.minimizer, lambda0, pb.lambda, pb.p), opt, out)) return out;
    out.status = SolveStatus::inconclusive;
    return out;
  }

  if (opt.allow_newton && pb.S_F == 0.0 && pb.p < 1.0 && pb.lambda < 0.0 && lambda1 < 0.0) {
    const NewtonResult nr = newton_attempt(pb, ScalarField(pb.grid_ptr(), constant_guess(pb)));
    out.route = "newton-empirical";
    out.iterations = nr.iterations;
    if (nr.converged) {
      Certificate c;
      c.kind = CertificateKind::newton;
      c.construction = "damped Newton, " + nr.diagnostics;
      out.certificate = c;
      if (accept(pb, nr.u, opt, out)) return out;
    }
    out.message += "newton: " + nr.diagnostics + "; ";
  }
  out.status = SolveStatus::inconclusive;
  return out;
}

PdeProblem pbsc_problem(const metrics::BaseManifold& base, const geometry::FiberModel& fiber,
                        const exponents::Rational& mu, double lambda) {
  const int m = base.dim(), k = fiber.k();
  const exponents::AlphaBeta ab = exponents::alpha_beta(m, k, mu);
  const exponents::Exponents ex = exponents::exponents(m, k, mu);
  return PdeProblem::on_base(base, exponents::to_double(ab.beta), fiber.scalar_curvature(), exponents::to_double(ex.p),
                             exponents::to_double(ex.q), lambda);
}

PbscOutcome solve_pbsc(const metrics::BaseManifold& base, const geometry::FiberModel& fiber,
                       const exponents::Rational& mu, double lambda, const SolveOptions& options) {
  PbscOutcome out;
  const double S_F = fiber.scalar_curvature();
  const int sign = S_F > 0 ? 1 : (S_F < 0 ? -1 : 0);
  out.regime = exponents::classify(base.dim(), fiber.k(), mu, sign);
  if (out.regime.regime == exponents::Regime::deferred || S_F > 0) {
    out.solve.status = SolveStatus::out_of_scope;
    out.solve.route = "classification";
    out.solve.message = S_F > 0 ? "fiber scalar curvature is positive" : "mu = -k/(m-1) has no reduced equation";
    return out;
  }
  const PdeProblem pb = pbsc_problem(base, fiber, mu, lambda);
  out.alpha = exponents::to_double(*out.regime.alpha);
  out.solve = solve_problem(pb, options);
  if (out.solve.status != SolveStatus::converged) return out;

  out.psi = out.solve.u.pow(out.alpha);
  metrics::SbcwpSpec spec;
  spec.base = metrics::BaseManifold{pb.calculus, base.ricci, base.scalar};
  spec.fiber = fiber;
  spec.psi = out.psi;
  spec.mu = mu;
  const ScalarField S = metrics::scalar_sbcwp(spec);
  out.scalar_check = (S + (-lambda)).max_abs();
  return out;
}

}  // namespace bcwp::elliptic

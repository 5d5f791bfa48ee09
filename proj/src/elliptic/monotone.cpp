#include "bcwp/elliptic/solver.hpp"

#include "bcwp/errors.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cmath>

namespace bcwp::elliptic {

namespace {

Eigen::VectorXd to_vector(const ScalarField& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.values().data(), static_cast<Eigen::Index>(f.size()));
}

ScalarField to_field(const GridPtr& grid, const Eigen::VectorXd& v) {
  return ScalarField(grid, std::vector<double>(v.data(), v.data() + v.size()));
}

struct Sequence {
  ScalarField limit;
  int iterations = 0;
  double monotonicity_violation = 0.0;
  bool converged = false;
};

// direction +1: from the subsolution (nondecreasing), -1: from the supersolution (nonincreasing)
Sequence run(const PdeProblem& pb, const Certificate& c, const Eigen::SimplicialLDLT<SparseMatrix>& solver,
             const Eigen::VectorXd& w, int direction, const MonotoneOptions& opt) {
  Sequence s;
  ScalarField u = direction > 0 ? c.sub : c.super;
  const double scale = std::max(1.0, c.super.max_abs());
  const double slack = opt.containment_tolerance * scale;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    ScalarField rhs = pb.f(u);
    rhs += c.nu * u;
    const Eigen::VectorXd x = solver.solve(w.cwiseProduct(to_vector(rhs)));
    ScalarField next = to_field(pb.grid_ptr(), x);
    double change = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double d = next[i] - u[i];
      change = std::max(change, std::abs(d));
      s.monotonicity_violation = std::max(s.monotonicity_violation, -direction * d);
      if (next[i] < c.sub[i] - slack || next[i] > c.super[i] + slack)
        throw CertificateViolation("monotone_iteration: iterate " + std::to_string(it) +
                                   " leaves the order interval at grid index " + std::to_string(i));
    }
    u = std::move(next);
    s.iterations = it;
    if (change < opt.tolerance) {
      s.converged = true;
      break;
    }
  }
  s.limit = std::move(u);
  return s;
}

}  // namespace

MonotoneResult monotone_iteration(const PdeProblem& problem, const Certificate& certificate,
                                  const MonotoneOptions& options) {
  problem.validate();
  if (!certificate.has_order_interval()) throw ConfigError("monotone_iteration: certificate has no order interval");
  if ((problem.S_B + certificate.nu).min() < 0.0) throw ConfigError("monotone_iteration: S_B + nu must be >= 0");
  const EllipticOperator op(problem);
  // one factorization of beta K + W (S_B + nu) serves every step of both sequences
  Eigen::SimplicialLDLT<SparseMatrix> solver(op.system(certificate.nu));
  if (solver.info() != Eigen::Success) throw Error("monotone_iteration: factorization failed");
  const Eigen::VectorXd w = to_vector(ScalarField(problem.grid_ptr(), op.weights()));

  const Sequence lo = run(problem, certificate, solver, w, +1, options);
  const Sequence hi = run(problem, certificate, solver, w, -1, options);
  MonotoneResult r;
  r.lower = lo.limit;
  r.upper = hi.limit;
  r.gap = (hi.limit - lo.limit).max_abs();
  r.iterations_lower = lo.iterations;
  r.iterations_upper = hi.iterations;
  r.residual_lower = residual_inf(problem, lo.limit);
  r.residual_upper = residual_inf(problem, hi.limit);
  r.monotonicity_violation = std::max(lo.monotonicity_violation, hi.monotonicity_violation);
  r.converged = lo.converged && hi.converged;
  return r;
}

NewtonResult newton_attempt(const PdeProblem& problem, ScalarField initial, int max_iterations, double tolerance) {
  problem.validate();
  initial.require_positive("newton_attempt: initial guess");
  const EllipticOperator op(problem);
  const Eigen::VectorXd w = to_vector(ScalarField(problem.grid_ptr(), op.weights()));
  NewtonResult out;
  ScalarField u = std::move(initial);
  double res = residual_inf(problem, u);
  for (int it = 1; it <= max_iterations && res > tolerance; ++it) {
    const ScalarField fp = u.map([&](double t) { return -problem.f_prime(t); });
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(op.system(fp));
    if (lu.info() != Eigen::Success) {
      out.diagnostics = "singular Jacobian at iteration " + std::to_string(it);
      break;
    }
    const Eigen::VectorXd delta = lu.solve(-w.cwiseProduct(to_vector(residual(problem, u))));
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, step *= 0.5) {
      ScalarField trial = u;
      bool positive = true;
      for (std::size_t i = 0; i < u.size(); ++i) {
        trial[i] += step * delta[static_cast<Eigen::Index>(i)];
        positive = positive && trial[i] > 0.0;
      }
      if (!positive) continue;
      const double r = residual_inf(problem, trial);
      if (r <= (1.0 - 1e-4 * step) * res) {
        u = std::move(trial);
        res = r;
        accepted = true;
        break;
      }
    }
    out.iterations = it;
    if (!accepted) {
      out.diagnostics = "line search failed at iteration " + std::to_string(it);
      break;
    }
  }
  out.u = std::move(u);
  out.residual = res;
  out.converged = res <= tolerance;
  if (out.converged) out.diagnostics = "residual " + std::to_string(res) + " after " + std::to_string(out.iterations) + " steps";
  return out;
}

}  // namespace bcwp::elliptic

#include "bcwp/elliptic/spectral.hpp"

#include "bcwp/errors.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <Eigen/SparseCholesky>

#include <cmath>
#include <numbers>
#include <random>

namespace bcwp::elliptic {

namespace {

struct Quotient {
  const SparseMatrix& G;
  const Eigen::VectorXd& w;
  double p;

  double norm(const Eigen::VectorXd& v) const { return w.dot(v.cwiseAbs().array().pow(p + 1.0).matrix()); }
  // J(v) / N(v)^{2/(p+1)}; invariant under v -> t v
  double value(const Eigen::VectorXd& v) const { return v.dot(G * v) / std::pow(norm(v), 2.0 / (p + 1.0)); }
  Eigen::VectorXd normalized(const Eigen::VectorXd& v) const {
    return v.cwiseAbs() / std::pow(norm(v), 1.0 / (p + 1.0));
  }
  // half the Euclidean gradient of the quotient at a normalized v
  Eigen::VectorXd gradient(const Eigen::VectorXd& v, double J) const {
    return G * v - J * w.cwiseProduct(v.array().pow(p).matrix());
  }
};

}  // namespace

KappaResult kappa_p(const EllipticOperator& op, double p, const KappaOptions& options) {
  const int m = op.calculus().grid().dim();
  if (!(p > 1.0)) throw ConfigError("kappa_p: requires p > 1");
  if (m >= 3 && p > (m + 2.0) / (m - 2.0) * (1.0 + 1e-14))
    throw ConfigError("kappa_p: p exceeds the critical exponent (m+2)/(m-2)");

  const double beta = op.beta();
  const Eigen::Map<const Eigen::VectorXd> w(op.weights().data(), static_cast<Eigen::Index>(op.weights().size()));
  const Eigen::VectorXd wv = w;
  const SparseMatrix G = op.system(0.0) / beta;  // K + W diag(S_B/beta)
  const double shift = std::max(1.0, op.S_B().max_abs() / beta);
  SparseMatrix P = op.calculus().stiffness();
  for (Eigen::Index i = 0; i < wv.size(); ++i) P.coeffRef(i, i) += shift * wv[i];
  Eigen::SimplicialLDLT<SparseMatrix> precond(P);
  if (precond.info() != Eigen::Success) throw Error("kappa_p: preconditioner factorization failed");

  const Quotient Q{G, wv, p};
  const EigenResult eig = principal_eigenpair(op);
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(eig.u1.values().data(), wv.size());
  if (options.perturbation > 0.0) {
    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] *= 1.0 + options.perturbation * unit(rng);
  }
  v = Q.normalized(v);

  auto pde_residual = [&](const Eigen::VectorXd& x, double J) {
    return beta * Q.gradient(x, J).cwiseQuotient(wv).cwiseAbs().maxCoeff();
  };

  KappaResult result;
  double step = 1.0;
  double J = v.dot(G * v);
  for (int it = 0;; ++it) {
    const Eigen::VectorXd g = Q.gradient(v, J);
    const double res = pde_residual(v, J);
    const double scale = std::max(1.0, std::abs(beta * J) * std::pow(v.maxCoeff(), p));
    result.iterations = it;
    if (res <= options.tolerance * scale) break;
    if (it >= options.max_iterations)
      throw ConvergenceError("kappa_p: no convergence after " + std::to_string(it) + " iterations (residual " +
                             std::to_string(res) + ")");
    const Eigen::VectorXd d = -precond.solve(g);
    const double slope = 2.0 * g.dot(d);  // directional derivative of the quotient, < 0
    step = std::min(1e3, 2.0 * step);
    Eigen::VectorXd trial;
    bool accepted = false;
    for (int halvings = 0; halvings < 80; ++halvings, step *= 0.5) {
      trial = v + step * d;
      if (trial.cwiseAbs().maxCoeff() == 0.0) continue;
      if (Q.value(trial) <= J + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // no decrease representable in floating point: accept the current point if its residual is
      // already at round-off level of the quotient
      if (res <= 1e-6 * scale) break;
      throw ConvergenceError("kappa_p: line search failed (residual " + std::to_string(res) + ")");
    }
    v = Q.normalized(trial);
    J = v.dot(G * v);
  }
  result.kappa = J;
  result.residual = pde_residual(v, J);
  result.minimizer = ScalarField(op.S_B().grid_ptr(), std::vector<double>(v.data(), v.data() + v.size()));
  return result;
}

double sphere_volume(int m) {
  if (m < 1) throw ConfigError("sphere_volume: m must be >= 1");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(std::numbers::pi, h) / boost::math::tgamma(h);
}

SharpConstant sharp_constant(int m) {
  if (m < 3) throw ConfigError("sharp_constant: requires m >= 3");
  SharpConstant s;
  s.m = m;
  s.omega = sphere_volume(m);
  s.K = std::sqrt(4.0 / (m * (m - 2.0) * std::pow(s.omega, 2.0 / m)));
  s.threshold = 1.0 / (s.K * s.K);
  return s;
}

bool critical_condition(const SharpConstant& sharp, double kappa_pY) { return kappa_pY < sharp.threshold; }

}  // namespace bcwp::elliptic

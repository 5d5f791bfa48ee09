#include "bcwp/elliptic/spectral.hpp"

#include "bcwp/errors.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>

namespace bcwp::elliptic {

namespace {

Eigen::VectorXd as_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

// Largest diagonal entry of W^{-1} A, a cheap bound on the operator scale for tolerances.
double operator_scale(const SparseMatrix& a, const Eigen::VectorXd& w) {
  double s = 1.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) s = std::max(s, std::abs(a.coeff(i, i)) / w[i]);
  return s;
}

}  // namespace

EigenResult principal_eigenpair(const PdeProblem& problem, const EigenOptions& options) {
  problem.validate();
  return principal_eigenpair(EllipticOperator(problem), options);
}

EigenResult principal_eigenpair(const EllipticOperator& op, const EigenOptions& options) {
  const Eigen::VectorXd w = as_vector(op.weights());
  const SparseMatrix a = op.system(0.0);
  const double scale = operator_scale(a, w);
  // lambda1 >= min S_B because K is positive semidefinite; a shift just below keeps A - sigma W
  // positive definite and makes the contraction factor (lambda1 - sigma)/(lambda2 - sigma) small.
  const double sigma = op.S_B().min() - 1e-2 * std::max(1.0, op.S_B().max_abs());
  SparseMatrix shifted = a;
  for (Eigen::Index i = 0; i < w.size(); ++i) shifted.coeffRef(i, i) -= sigma * w[i];
  Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
  if (solver.info() != Eigen::Success) throw Error("principal_eigenpair: factorization failed");

  Eigen::VectorXd x = Eigen::VectorXd::Ones(w.size());
  EigenResult result;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd rhs = w.cwiseProduct(x);
    x = solver.solve(rhs);
    x /= x.cwiseAbs().maxCoeff();
    const Eigen::VectorXd ax = a * x;
    const double rho = x.dot(ax) / x.dot(w.cwiseProduct(x));
    const double res = (ax.cwiseQuotient(w) - rho * x).cwiseAbs().maxCoeff();
    result.lambda1 = rho;
    result.residual = res;
    result.iterations = it;
    if (res <= options.tolerance * scale) break;
    if (it == options.max_iterations)
      throw ConvergenceError("principal_eigenpair: no convergence after " + std::to_string(it) +
                             " iterations (residual " + std::to_string(res) + ")");
  }
  // the power iterate of a positive vector under an inverse M-matrix stays positive; fix the sign
  // anyway in case the metric is not diagonal
  Eigen::Index at = 0;
  x.cwiseAbs().maxCoeff(&at);
  if (x[at] < 0) x = -x;
  x /= x.maxCoeff();
  if (x.minCoeff() <= 0.0) throw Error("principal_eigenpair: limit eigenvector changes sign");
  result.u1 = ScalarField(op.S_B().grid_ptr(), std::vector<double>(x.data(), x.data() + x.size()));
  result.residual = (op.apply(result.u1) - result.lambda1 * result.u1).max_abs();
  return result;
}

ScalarField unit_response(const EllipticOperator& op) {
  const Eigen::VectorXd w = as_vector(op.weights());
  Eigen::SimplicialLDLT<SparseMatrix> solver(op.system(0.0));
  if (solver.info() != Eigen::Success) throw Error("unit_response: factorization failed");
  if ((solver.vectorD().array() <= 0.0).any()) throw Error("unit_response: L is not positive definite");
  const Eigen::VectorXd e = solver.solve(w);
  ScalarField out(op.S_B().grid_ptr(), std::vector<double>(e.data(), e.data() + e.size()));
  out.require_positive("unit_response");
  return out;
}

}  // namespace bcwp::elliptic

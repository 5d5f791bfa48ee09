#include "bcwp/elliptic/pbsc.hpp"

#include "bcwp/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>

namespace bcwp::elliptic {

namespace {

SweepPoint attempt(const PdeProblem& pb, double lambda, const SolveOptions& opt, bool refinement) {
  SweepPoint pt;
  pt.lambda = lambda;
  pt.refinement = refinement;
  const SolveOutcome o = solve_problem(pb.with_lambda(lambda), opt);
  pt.status = o.status;
  pt.route = o.route;
  if (o.status == SolveStatus::converged) {
    pt.residual = o.residual_inf;
    pt.u_max = o.u.max();
  }
  return pt;
}

bool success(const SweepPoint& p) { return p.status == SolveStatus::converged; }

}  // namespace

double lambda_bar_bound(double lambda1, double S_F, double p, double q) {
  if (!(p > 1.0) || !(S_F < 0.0) || !(q < p)) throw ConfigError("lambda_bar_bound: requires p > 1, S_F < 0, q < p");
  auto g = [&](double x) {
    const double t = std::exp(x);
    return -(lambda1 * std::pow(t, 1.0 - p) + S_F * std::pow(t, q - p));
  };
  const double lo = -30.0, hi = 30.0;
  constexpr int n = 10000;
  const double dx = (hi - lo) / (n - 1);
  int best = 0;
  double best_value = INFINITY;
  for (int i = 0; i < n; ++i) {
    const double v = g(lo + i * dx);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best > 0 && best < n - 1) {
    const auto r = boost::math::tools::brent_find_minima(g, lo + (best - 1) * dx, lo + (best + 1) * dx, 52);
    best_value = std::min(best_value, r.second);
  }
  // both terms vanish as t -> inf, so the supremum is at least 0
  return std::max(0.0, -best_value);
}

SweepReport lambda_sweep(const PdeProblem& problem, std::vector<double> lambdas, const SweepOptions& options) {
  problem.validate();
  SweepReport report;
  report.lambda1 = principal_eigenpair(problem, options.solve.eigen).lambda1;
  if (problem.p > 1.0 && problem.S_F < 0.0 && problem.q < problem.p)
    report.lambda_bar = lambda_bar_bound(report.lambda1, problem.S_F, problem.p, problem.q);

  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());
  for (double l : lambdas) report.points.push_back(attempt(problem, l, options.solve, false));

  auto locate = [&] {
    report.first_failure.reset();
    report.last_success.reset();
    for (const auto& pt : report.points) {
      if (!success(pt)) {
        if (!report.first_failure) report.first_failure = pt.lambda;
      } else if (!report.first_failure) {
        report.last_success = pt.lambda;
      } else {
        report.down_set = false;
      }
    }
  };
  locate();
  if (report.last_success && report.first_failure) {
    double a = *report.last_success, b = *report.first_failure;
    for (int i = 0; i < options.bisections && b - a > options.bracket_tolerance * std::max(1.0, std::abs(a)); ++i) {
      const double mid = 0.5 * (a + b);
      const SweepPoint pt = attempt(problem, mid, options.solve, true);
      report.points.push_back(pt);
      (success(pt) ? a : b) = mid;
    }
    std::sort(report.points.begin(), report.points.end(),
              [](const SweepPoint& x, const SweepPoint& y) { return x.lambda < y.lambda; });
    report.down_set = true;
    locate();
    report.estimate = 0.5 * (*report.last_success + *report.first_failure);
  }
  return report;
}

}  // namespace bcwp::elliptic

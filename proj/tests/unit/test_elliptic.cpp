#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcwp/elliptic/pbsc.hpp"
#include "bcwp/errors.hpp"
#include "test_support.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <iomanip>
#include <cmath>
#include <numbers>
#include <random>

using namespace bcwp::elliptic;
using bcwp::exponents::Rational;
using bcwp::geometry::Axis;
using bcwp::geometry::Coordinates;
using bcwp::geometry::FiberModel;
using bcwp::geometry::make_grid;
using bcwp::geometry::MetricField;
using bcwp::metrics::BaseManifold;
using bcwp::testing::RandomTrigField;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

BaseManifold torus(int m, int n, double length = kTwoPi) {
  std::vector<Axis> axes;
  for (int a = 0; a < m; ++a) axes.push_back(Axis::periodic(n, length));
  return BaseManifold::brute_force(MetricField::constant_diagonal(make_grid(axes), std::vector<double>(m, 1.0)));
}

/// T^2 with g = diag(1 + 0.3 sin x, 1 + 0.2 cos y): curved, diagonal, so the discrete operator is an M-matrix.
BaseManifold bumpy_torus(int n) {
  const auto grid = make_grid({Axis::periodic(n, kTwoPi), Axis::periodic(n, kTwoPi)});
  return BaseManifold::brute_force(MetricField::from_function(grid, 2, [](const Coordinates& x) {
    bcwp::geometry::SmallMatrix g = bcwp::geometry::SmallMatrix::Zero(2, 2);
    g(0, 0) = 1.0 + 0.3 * std::sin(x[0]);
    g(1, 1) = 1.0 + 0.2 * std::cos(x[1]);
    return g;
  }));
}

ScalarField constant(const BaseManifold& b, double v) { return ScalarField(b.grid_ptr(), v); }

ScalarField field(const BaseManifold& b, const std::function<double(const Coordinates&)>& f) {
  return ScalarField::from_function(b.grid_ptr(), f);
}

PdeProblem problem(const BaseManifold& b, const ScalarField& S_B, double beta, double S_F, double p, double q,
                   double lambda) {
  return PdeProblem::on_base(b, S_B, beta, S_F, p, q, lambda);
}

/// Smallest eigenvalue of the same discrete operator, W^{-1/2} (beta K + W S_B) W^{-1/2}, densely.
double dense_lambda1(const PdeProblem& pb) {
  const EllipticOperator op(pb);
  const Eigen::MatrixXd a = Eigen::MatrixXd(op.system(0.0));
  const auto& w = op.weights();
  Eigen::VectorXd s(static_cast<Eigen::Index>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) s[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(w[i]);
  const Eigen::MatrixXd m = s.asDiagonal() * a * s.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double bisect(const std::function<double(double)>& g, double a, double b) {
  double ga = g(a);
  for (int i = 0; i < 200 && b - a > 1e-15 * b; ++i) {
    const double c = 0.5 * (a + b);
    const double gc = g(c);
    if ((gc > 0) == (ga > 0)) {
      a = c;
      ga = gc;
    } else {
      b = c;
    }
  }
  return 0.5 * (a + b);
}

double sup_norm_gap(const ScalarField& a, double v) { return (a + (-v)).max_abs(); }

}  // namespace

TEST_CASE("principal eigenpair: constants and the dense oracle") {
  const BaseManifold c64 = torus(1, 64);
  for (double c : {-2.0, 0.0, 1.5}) {
    const EigenResult r = principal_eigenpair(problem(c64, constant(c64, c), 1.0, 0, 1, 1, 0));
    CHECK(std::abs(r.lambda1 - c) <= 1e-12);
    CHECK(sup_norm_gap(r.u1, 1.0) <= 1e-12);
  }
  const PdeProblem circle = problem(c64, field(c64, [](const Coordinates& x) { return std::sin(x[0]); }), 1.0, 0, 1, 1, 0);
  const EigenResult e = principal_eigenpair(circle);
  CHECK(std::abs(e.lambda1 - dense_lambda1(circle)) <= 1e-8);
  CHECK(e.u1.min() > 0.0);
  CHECK(e.u1.max() == 1.0);
  CHECK(e.residual <= 1e-8);

  const BaseManifold t16 = torus(2, 16);
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const RandomTrigField S(2, 4, -0.5, 2.0, seed);
    const PdeProblem pb = problem(t16, field(t16, S), 0.7, 0, 1, 1, 0);
    CHECK(std::abs(principal_eigenpair(pb).lambda1 - dense_lambda1(pb)) <= 1e-8);
  }
  const BaseManifold bumpy = bumpy_torus(12);
  const PdeProblem pb = problem(bumpy, field(bumpy, [](const Coordinates& x) { return std::cos(x[0] + x[1]); }), 1.3, 0, 1, 1, 0);
  const EigenResult b = principal_eigenpair(pb);
  CHECK(std::abs(b.lambda1 - dense_lambda1(pb)) <= 1e-8);
  CHECK(b.u1.min() > 0.0);
}

TEST_CASE("unit response solves L e = 1") {
  const BaseManifold t = torus(2, 12);
  const PdeProblem pb = problem(t, field(t, [](const Coordinates& x) { return 1.0 + 0.5 * std::sin(x[0]); }), 1.0, 0, 1, 1, 0);
  const EllipticOperator op(pb);
  const ScalarField e = unit_response(op);
  CHECK(sup_norm_gap(op.apply(e), 1.0) <= 1e-12);
  CHECK(e.min() > 0.0);
  const PdeProblem neg = problem(t, constant(t, -1.0), 1.0, 0, 1, 1, 0);
  CHECK_THROWS_AS(unit_response(EllipticOperator(neg)), bcwp::Error);
}

TEST_CASE("kappa_p: constants, minimality and the Euler-Lagrange residual") {
  const BaseManifold t = torus(2, 12);
  const double vol = kTwoPi * kTwoPi;
  const double p = 2.5;
  {
    const KappaResult r = kappa_p(EllipticOperator(problem(t, constant(t, 0.0), 1.0, 0, p, 1, 0)), p);
    CHECK(std::abs(r.kappa) <= 1e-12);
    CHECK(sup_norm_gap(r.minimizer, std::pow(vol, -1.0 / (p + 1.0))) <= 1e-12);
  }
  {
    // small torus: the first nonzero Laplace eigenvalue (2 pi / L)^2 exceeds (p-1) c / beta,
    // so the constant is the minimizer; start away from it
    const BaseManifold small = torus(2, 12, 2.0);
    const double c = 1.2, beta = 0.8;
    KappaOptions ko;
    ko.perturbation = 0.3;
    const KappaResult r = kappa_p(EllipticOperator(problem(small, constant(small, c), beta, 0, p, 1, 0)), p, ko);
    CHECK(r.kappa == doctest::Approx(c / beta * std::pow(4.0, 1.0 - 2.0 / (p + 1.0))).epsilon(1e-9));
    CHECK(sup_norm_gap(r.minimizer, std::pow(4.0, -1.0 / (p + 1.0))) <= 1e-6);
  }
  const RandomTrigField S(2, 3, 0.8, 1.2, 11);
  const PdeProblem pb = problem(t, field(t, S), 1.5, 0, p, 1, 0);
  const EllipticOperator op(pb);
  const KappaResult r = kappa_p(op, p);
  // (beta kappa, v) solves the constant-curvature equation
  const ScalarField lhs = op.apply(r.minimizer);
  const ScalarField rhs = (1.5 * r.kappa) * r.minimizer.pow(p);
  CHECK((lhs - rhs).max_abs() <= 1e-6);
  // the quotient at random positive competitors is never below kappa
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.2, 1.0);
  const auto& w = op.weights();
  for (int trial = 0; trial < 50; ++trial) {
    ScalarField v = r.minimizer;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= trial < 25 ? 1.0 + 0.05 * (unit(rng) - 0.6) : unit(rng);
    double J = op.calculus().dirichlet_form(v, v), N = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      J += w[i] * pb.S_B[i] / 1.5 * v[i] * v[i];
      N += w[i] * std::pow(v[i], p + 1.0);
    }
    CHECK(J / std::pow(N, 2.0 / (p + 1.0)) >= r.kappa - 1e-10);
  }
  CHECK_THROWS_AS(kappa_p(op, 1.0), bcwp::ConfigError);
  const BaseManifold t3 = torus(3, 4);
  CHECK_THROWS_AS(kappa_p(EllipticOperator(problem(t3, constant(t3, 1.0), 1.0, 0, 6, 1, 0)), 6.0), bcwp::ConfigError);
}

TEST_CASE("sharp Sobolev constant") {
  CHECK(sphere_volume(1) == doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(sphere_volume(2) == doctest::Approx(4.0 * std::numbers::pi).epsilon(1e-15));
  const SharpConstant s3 = sharp_constant(3);
  const double w3 = 2.0 * std::numbers::pi * std::numbers::pi;
  CHECK(s3.omega == doctest::Approx(w3).epsilon(1e-15));
  CHECK(s3.K == doctest::Approx(std::sqrt(4.0 / (3.0 * std::pow(w3, 2.0 / 3.0)))).epsilon(1e-15));
  for (int m = 3; m < 10; ++m) CHECK(sharp_constant(m + 1).K < sharp_constant(m).K);
  for (int m = 3; m <= 10; ++m) CHECK(critical_condition(sharp_constant(m), 0.0));
  CHECK_THROWS_AS(sharp_constant(2), bcwp::ConfigError);
}

TEST_CASE("nonlinearity zeros and the shape of f(t)/t") {
  const Nonlinearity a = nonlinearity_analysis(-1.0, -1.0, 2.0, 0.5, 0.0);
  REQUIRE(a.gamma);
  CHECK(*a.gamma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.quotient_decreasing);
  const Nonlinearity b = nonlinearity_analysis(-1.0, -1.0, 2.0, 0.5, -1.0);
  REQUIRE(b.gamma_tilde);
  const double oracle = bisect([](double t) { return -t * t + std::sqrt(t) + t; }, 1.0, 4.0);
  CHECK(std::abs(*b.gamma_tilde - oracle) <= 1e-12);
  CHECK(*b.gamma_tilde > *b.gamma);

  // f(gamma) = 0 and gamma <= gamma_tilde whenever S_B_min <= 0, over random parameters
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double lambda = -0.1 - 3 * u(rng), S_F = -0.1 - 3 * u(rng);
    const double p = 1.0 + 3 * u(rng), q = -2.0 + 2.9 * u(rng), smin = -2 * u(rng);
    const Nonlinearity n = nonlinearity_analysis(lambda, S_F, p, q, smin);
    REQUIRE(n.gamma);
    REQUIRE(n.gamma_tilde);
    const double g = *n.gamma;
    CHECK(std::abs(lambda * std::pow(g, p) - S_F * std::pow(g, q)) <= 1e-12 * (std::abs(lambda) * std::pow(g, p) + 1));
    CHECK(*n.gamma_tilde >= g * (1 - 1e-12));
    CHECK(n.quotient_decreasing);
  }
  CHECK_FALSE(nonlinearity_analysis(1.0, 0.0, 3.0, 1.0, 0.0).quotient_decreasing);
  CHECK(nonlinearity_analysis(1.0, 0.0, 0.5, 1.0, 0.0).quotient_decreasing);
  CHECK_FALSE(nonlinearity_analysis(1.0, -1.0, 0.5, 1.0, 0.0).gamma);
}

TEST_CASE("envelope extrema against a dense log-grid scan") {
  const BaseManifold t = torus(1, 8);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 60; ++i) {
    const double lambda = 4 * u(rng) - 2, S_F = -2 * u(rng), p = 0.2 + 3 * u(rng), q = -1 + 1.8 * u(rng);
    const PdeProblem pb = problem(t, constant(t, 0.0), 1.0, S_F, p, q, lambda);
    // coarse scan in log10 x over [-6, 6], then a fine scan around each extreme sample
    auto E = [&](double y) { return pb.f(std::pow(10.0, y)) / std::pow(10.0, y); };
    const double dy = 12.0 / 200000.0;
    double y_lo = -6, y_hi = -6;
    for (int j = 0; j <= 200000; ++j) {
      const double y = -6.0 + j * dy;
      if (E(y) < E(y_lo)) y_lo = y;
      if (E(y) > E(y_hi)) y_hi = y;
    }
    double lo = E(y_lo), hi = E(y_hi);
    for (int j = -20000; j <= 20000; ++j) {
      lo = std::min(lo, E(std::clamp(y_lo + j * dy / 10000.0, -6.0, 6.0)));
      hi = std::max(hi, E(std::clamp(y_hi + j * dy / 10000.0, -6.0, 6.0)));
    }
    const EnvelopeExtremum inf = envelope_inf(pb), sup = envelope_sup(pb);
    // the scan only sees [1e-6, 1e6]; the envelope may go lower or higher outside it
    CHECK(inf.value <= lo + 1e-9 * std::max(1.0, std::abs(lo)));
    CHECK(sup.value >= hi - 1e-9 * std::max(1.0, std::abs(hi)));
    if (inf.attained) CHECK(inf.value == doctest::Approx(lo).epsilon(1e-9));
    if (sup.attained) CHECK(sup.value == doctest::Approx(hi).epsilon(1e-9));
  }
}

TEST_CASE("nonexistence certificates") {
  const BaseManifold t = torus(2, 8);
  const auto a = nonexistence_check(problem(t, constant(t, -1.0), 1.0, 0.0, 3.0, 1.0, 2.0));
  REQUIRE(a);
  CHECK(a->kind == "envelope-max");
  const auto b = nonexistence_check(problem(t, constant(t, 0.0), 1.0, 0.0, 3.0, 1.0, -2.0));
  REQUIRE(b);
  CHECK(b->kind == "envelope-min");
  // solvable constant case: u = 1/2 solves -u = -4 u^3
  CHECK_FALSE(nonexistence_check(problem(t, constant(t, -1.0), 1.0, 0.0, 3.0, 1.0, -4.0)));
  // concave-convex tangency is solvable, slightly beyond it is not
  const double p = 3, q = 0.5;
  const double tstar = std::pow((p - q) / (p - 1), 1 / (1 - q));
  const double bar = std::pow(tstar, 1 - p) - std::pow(tstar, q - p);
  CHECK_FALSE(nonexistence_check(problem(t, constant(t, 1.0), 1.0, -1.0, p, q, bar * (1 - 1e-6))));
  CHECK(nonexistence_check(problem(t, constant(t, 1.0), 1.0, -1.0, p, q, bar * (1 + 1e-6))));

  const ScalarField zero = constant(t, 0.0);
  CHECK(eigen_sign_check(problem(t, zero, 1, -1, 2, 0.5, 0.0), -0.3));
  CHECK(eigen_sign_check(problem(t, zero, 1, -1, 2, 0.5, 1.0), 0.0));
  CHECK_FALSE(eigen_sign_check(problem(t, zero, 1, -1, 2, 0.5, 1.0), 0.1));
  CHECK(eigen_sign_check(problem(t, zero, 1, 0, 0.5, 1, -1.0), 0.2));
  CHECK_FALSE(eigen_sign_check(problem(t, zero, 1, 0, 0.5, 1, -1.0), -0.2));
  // linear: only lambda = lambda1
  CHECK(eigen_sign_check(problem(t, zero, 1, 0, 1, 1, 0.5), 0.7));
  CHECK_FALSE(eigen_sign_check(problem(t, zero, 1, 0, 1, 1, 0.7), 0.7));
}

TEST_CASE("sub/supersolution constructions") {
  const BaseManifold t = torus(2, 10);
  {
    // lambda < 0, S_B >= 0: the zero gamma of f is a constant supersolution
    const PdeProblem pb = problem(t, field(t, [](const Coordinates& x) { return 1 + std::sin(x[0]); }), 1, -1, 2, 0.5, -1);
    const double g = *nonlinearity_analysis(pb).gamma;
    const EllipticOperator op(pb);
    CHECK((op.apply(constant(t, g)) - pb.f(constant(t, g))).min() >= -1e-14);
    const auto c = construct_sub_super(pb, principal_eigenpair(pb));
    REQUIRE(c);
    CHECK(c->kind == CertificateKind::bracket);
    CHECK(c->a1 <= g);
    CHECK(certificate_violation(pb, *c) <= 1e-12);
  }
  {
    // lambda > 0 small, S_B = 1: e = u1 = 1 and M e is a supersolution iff f(M) <= M
    const PdeProblem pb = problem(t, constant(t, 1.0), 1, -1, 3, 0.5, 0.05);
    CertificateOptions opt;
    opt.allow_bracket = false;
    const auto c = construct_sub_super(pb, principal_eigenpair(pb), opt);
    REQUIRE(c);
    CHECK(c->kind == CertificateKind::sub_super);
    CHECK(pb.f(c->M) <= c->M * (1 + 1e-12));
    CHECK(certificate_violation(pb, *c) <= 1e-12);
    CHECK(c->nu >= 0.0);
    // t -> f(t) + nu t is nondecreasing on the order interval
    const double lo = c->sub.min(), hi = c->super.max();
    for (int i = 0; i < 1000; ++i) {
      const double a = lo + (hi - lo) * i / 1000.0, b = lo + (hi - lo) * (i + 1) / 1000.0;
      CHECK(pb.f(b) + c->nu * b >= pb.f(a) + c->nu * a - 1e-12);
    }
  }
  {
    // Lichnerowicz-type q < 0
    const PdeProblem pb = problem(t, field(t, [](const Coordinates& x) { return std::cos(x[1]); }), 1, -1, 3, -0.5, -1);
    const auto c = construct_sub_super(pb, principal_eigenpair(pb));
    REQUIRE(c);
    CHECK(pb.f(c->a0) / c->a0 >= pb.S_B.max());
    CHECK(pb.f(c->a1) / c->a1 <= pb.S_B.min());
  }
  {
    // lambda1 <= 0 rules out the eigen pair
    const PdeProblem pb = problem(t, constant(t, -1.0), 1, -1, 3, 0.5, 1);
    CertificateOptions opt;
    opt.allow_bracket = false;
    std::string why;
    CHECK_FALSE(construct_sub_super(pb, principal_eigenpair(pb), opt, &why));
    CHECK(why.find("lambda1") != std::string::npos);
  }
}

TEST_CASE("monotone iteration: constant-solution oracles") {
  const BaseManifold t = torus(2, 10);
  {
    const PdeProblem pb = problem(t, constant(t, -1.0), 1, 0, 3, 1, -4);
    const SolveOutcome o = solve_problem(pb);
    REQUIRE(o.status == SolveStatus::converged);
    CHECK(o.route == "bracket");
    REQUIRE(o.monotone);
    CHECK(sup_norm_gap(o.monotone->lower, 0.5) <= 1e-8);
    CHECK(sup_norm_gap(o.monotone->upper, 0.5) <= 1e-8);
    CHECK(o.monotone->monotonicity_violation <= 1e-12);
  }
  {
    const PdeProblem pb = problem(t, constant(t, 0.0), 1, -1, 3, -0.5, -1);
    const SolveOutcome o = solve_problem(pb);
    REQUIRE(o.status == SolveStatus::converged);
    CHECK(sup_norm_gap(o.u, 1.0) <= 1e-8);
  }
  {
    // S_B = 1, lambda = 4, p = 3: constants are ordered the wrong way round; the variational route finds 1/2
    const BaseManifold small = torus(2, 10, 2.0);
    const PdeProblem pb = problem(small, constant(small, 1.0), 1, 0, 3, 1, 4);
    const SolveOutcome o = solve_problem(pb);
    REQUIRE(o.status == SolveStatus::converged);
    CHECK(o.route == "variational");
    CHECK(sup_norm_gap(o.u, 0.5) <= 1e-8);
    // scaling to lambda = 1 gives 1 = (S_B/1)^{1/2}
    const ScalarField u1 = scale_solution(o.u, 4.0, 1.0, 3.0);
    CHECK(scale_factor(4.0, 1.0, 3.0) == 2.0);
    CHECK(sup_norm_gap(u1, 1.0) <= 2e-8);
    CHECK(residual_inf(pb.with_lambda(1.0), u1) <= o.residual_inf * std::max(2.0, 8.0) + 1e-15);
    CHECK(scale_factor(4.0, 4.0, 3.0) == 1.0);
    CHECK_THROWS_AS(scale_factor(4.0, -1.0, 3.0), bcwp::ConfigError);
  }
  {
    // varying S_B, singular nonlinearity: iterates stay in the order interval, both limits agree
    const RandomTrigField S(2, 4, 0.0, 1.5, 41);
    const PdeProblem pb = problem(t, field(t, S), 0.8, -1, 3, -0.5, -1);
    const SolveOutcome o = solve_problem(pb);
    REQUIRE(o.status == SolveStatus::converged);
    CHECK(o.residual_inf <= 1e-6);
    CHECK(o.monotone->monotonicity_violation <= 1e-12);
    CHECK(o.monotone->gap <= 1e-6);
    CHECK((o.certificate->sub - o.u).max() <= 0.0);
    CHECK((o.u - o.certificate->super).max() <= 0.0);
  }
}

TEST_CASE("warped products: solvable exactly at lambda = lambda1") {
  const BaseManifold t = torus(2, 12);
  BaseManifold b = t;
  b.scalar = field(t, [](const Coordinates& x) { return 0.5 + 0.4 * std::sin(x[0]) * std::cos(x[1]); });
  const FiberModel fiber = FiberModel::flat(2);
  const double lambda1 = principal_eigenpair(pbsc_problem(b, fiber, Rational(0), 0.0)).lambda1;
  const PbscOutcome yes = solve_pbsc(b, fiber, Rational(0), lambda1);
  REQUIRE(yes.solve.status == SolveStatus::converged);
  CHECK(yes.solve.route == "linear");
  CHECK(yes.alpha == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  // psi is a power of u1
  const ScalarField u1 = yes.solve.eigen.u1;
  CHECK((yes.psi - u1.pow(2.0 / 3.0)).max_abs() <= 1e-14);
  REQUIRE(yes.scalar_check);
  CHECK(*yes.scalar_check <= 1e-6);
  const PbscOutcome no = solve_pbsc(b, fiber, Rational(0), lambda1 + 0.1);
  CHECK(no.solve.status == SolveStatus::nonexistence_certified);
}

TEST_CASE("solve_pbsc: constant S_B = 1, lambda = 1 gives u = 1 and S = 1") {
  BaseManifold b = torus(3, 6);
  b.scalar = constant(b, 1.0);
  const PbscOutcome o = solve_pbsc(b, FiberModel::flat(1), Rational(-1, 4), 1.0);
  REQUIRE(o.solve.status == SolveStatus::converged);
  CHECK(o.regime.regime == bcwp::exponents::Regime::sublinear);
  CHECK(sup_norm_gap(o.solve.u, 1.0) <= 1e-8);
  CHECK(*o.scalar_check <= 1e-8);
  const PbscOutcome sc = solve_pbsc(b, FiberModel::flat(1), Rational(-1, 2), 1.0);
  CHECK(sc.solve.status == SolveStatus::out_of_scope);
  const PbscOutcome pos = solve_pbsc(b, FiberModel::sphere(2, 1.0), Rational(1, 2), 1.0);
  CHECK(pos.solve.status == SolveStatus::out_of_scope);
}

TEST_CASE("regime gates") {
  const BaseManifold t = torus(2, 10);
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  // sublinear: sign(lambda) != sign(lambda1) never converges
  for (int i = 0; i < 12; ++i) {
    const RandomTrigField S(2, 3, 2 * u(rng) - 1, 1.0, 100 + static_cast<std::uint64_t>(i));
    const PdeProblem base_pb = problem(t, field(t, S), 1, 0, 0.6, 1, 0);
    const double l1 = principal_eigenpair(base_pb).lambda1;
    const double lambda = (l1 > 0 ? -1 : 1) * (0.1 + u(rng));
    const SolveOutcome o = solve_problem(base_pb.with_lambda(lambda));
    CHECK(o.status != SolveStatus::converged);
    CHECK(o.status == SolveStatus::nonexistence_certified);
  }
  // lambda >= 0, lambda1 <= 0, S_F < 0: nonexistence
  for (int i = 0; i < 12; ++i) {
    const RandomTrigField S(2, 3, -0.3 - u(rng), 1.0, 200 + static_cast<std::uint64_t>(i));
    const PdeProblem pb = problem(t, field(t, S), 1, -0.5, 2.0 + u(rng), u(rng), u(rng) * 2);
    REQUIRE(principal_eigenpair(pb).lambda1 <= 0);
    CHECK(solve_problem(pb).status == SolveStatus::nonexistence_certified);
  }
  // supercritical with S_B changing sign: out of scope; with max S_B < 0 the bracket applies
  const BaseManifold t3 = torus(3, 5);
  const PdeProblem super = problem(t3, field(t3, [](const Coordinates& x) { return std::sin(x[0]); }), 1, 0, 7, 1, -1);
  CHECK(solve_problem(super).status == SolveStatus::out_of_scope);
  const PdeProblem neg = problem(t3, field(t3, [](const Coordinates& x) { return -1.5 + std::sin(x[0]); }), 1, 0, 7, 1, -1);
  CHECK(solve_problem(neg).status == SolveStatus::converged);
}

TEST_CASE("uniqueness: two certificates, one solution") {
  const BaseManifold t = torus(2, 10);
  const RandomTrigField S(2, 3, 1.0, 0.8, 57);
  // sublinear lambda > 0, lambda1 > 0; and concave-convex with lambda < 0: f(t)/t decreasing in both
  for (const PdeProblem& pb : {problem(t, field(t, S), 1, 0, 0.5, 1, 1.5), problem(t, field(t, S), 1, -1, 2.5, 0.4, -2)}) {
    REQUIRE(nonlinearity_analysis(pb).quotient_decreasing);
    const EigenResult eig = principal_eigenpair(pb);
    CertificateOptions first;
    first.allow_bracket = false;
    CertificateOptions second = first;
    second.eps_factor = 1e-2;
    second.M_factor = 10;
    if (eig.lambda1 <= 0 || pb.lambda < 0) {
      first = CertificateOptions{};
      second = CertificateOptions{};
      second.bracket_lo = 1e-3;
      second.points_per_decade = 7;
    }
    const auto c1 = construct_sub_super(pb, eig, first);
    const auto c2 = construct_sub_super(pb, eig, second);
    REQUIRE(c1);
    REQUIRE(c2);
    CHECK((c1->sub - c2->sub).max_abs() > 0.0);
    const MonotoneResult r1 = monotone_iteration(pb, *c1);
    const MonotoneResult r2 = monotone_iteration(pb, *c2);
    CHECK((r1.lower - r2.lower).max_abs() <= 1e-6);
    CHECK((r1.lower - r2.upper).max_abs() <= 1e-6);
    CHECK(r1.gap <= 1e-6);
  }
}

TEST_CASE("a-priori bounds for lambda < 0") {
  const BaseManifold t = torus(2, 10);
  int checked = 0, with_lower = 0;
  for (int i = 0; i < 16; ++i) {
    const RandomTrigField S(2, 3, 1.0 - 0.25 * i, 1.5, 300 + static_cast<std::uint64_t>(i));
    const double q = i % 2 == 0 ? 0.5 : -0.5;
    const PdeProblem pb = problem(t, field(t, S), 1.0, -1.0, 2.5, q, -0.5 - 0.2 * i);
    const SolveOutcome o = solve_problem(pb);
    if (o.status != SolveStatus::converged) continue;
    ++checked;
    const Nonlinearity n = nonlinearity_analysis(pb);
    REQUIRE(n.gamma_tilde);
    CHECK(o.u.max() <= *n.gamma_tilde + 1e-8);
    if (o.eigen.lambda1 <= 0) {
      ++with_lower;
      CHECK(*n.gamma <= o.u.max());
    }
  }
  CHECK(checked == 16);
  CHECK(with_lower >= 4);
}

TEST_CASE("concave-convex sweep: tangency, down-set and the upper bound") {
  const BaseManifold t = torus(3, 4);
  const PdeProblem pb = pbsc_problem(t, FiberModel::flat(1), Rational(4, 5), 0.0);
  PdeProblem cc = pb;
  cc.S_B = constant(t, 1.0);
  cc.S_F = -1.0;
  REQUIRE(cc.p > 1.0);
  REQUIRE(cc.q > 0.0);
  REQUIRE(cc.q < 1.0);
  const double p = cc.p, q = cc.q;
  const double tstar = std::pow((p - q) / (p - 1), 1 / (1 - q));
  const double tangency = std::pow(tstar, 1 - p) - std::pow(tstar, q - p);
  std::vector<double> grid;
  const double step = 0.02;
  for (double l = step; l < 1.5 * tangency; l += step) grid.push_back(l);
  const SweepReport r = lambda_sweep(cc, grid);
  CHECK(r.down_set);
  REQUIRE(r.estimate);
  CHECK(std::abs(*r.estimate - tangency) <= step);
  REQUIRE(r.lambda_bar);
  CHECK(*r.lambda_bar >= *r.last_success);
  MESSAGE(std::setprecision(17) << "tangency " << tangency << " estimate " << *r.estimate<< " bracket " << *r.last_success << " " << *r.first_failure << " lambda_bar " << *r.lambda_bar);
}

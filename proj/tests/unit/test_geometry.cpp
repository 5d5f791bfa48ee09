#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bcwp/errors.hpp"
#include "bcwp/geometry/calculus.hpp"
#include "bcwp/geometry/curvature.hpp"
#include "bcwp/geometry/export.hpp"
#include "bcwp/geometry/fiber.hpp"
#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

using namespace bcwp::geometry;
using bcwp::testing::observed_orders;
using bcwp::testing::RandomTrigField;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridPtr circle(int n) { return make_grid({Axis::periodic(n, kTwoPi)}); }

GridPtr torus(int dim, int n) {
  std::vector<Axis> axes;
  for (int a = 0; a < dim; ++a) axes.push_back(Axis::periodic(n, kTwoPi));
  return make_grid(axes);
}

MetricField round_sphere2(int n_theta, int n_phi, double r) {
  return FiberModel::sphere(2, r).realize({n_theta, n_phi}).metric;
}

// Colatitude ladders use n + 1 in {16, 32, 64} nodes so that spacings halve and nodes nest;
// errors are compared on the nodes of the coarsest level inside [pi/4, 3pi/4].
bool interior(const GridManifold& g, std::size_t p, int colat_axes) {
  for (int a = 0; a < colat_axes; ++a) {
    const double t = g.coordinate(p, a);
    if (t < kPi / 4 - 1e-12 || t > 3 * kPi / 4 + 1e-12) return false;
    const double j = t / (kPi / 16);
    if (std::abs(j - std::round(j)) > 1e-9) return false;
  }
  return true;
}

MetricField skew_torus_metric(int n) {
  return MetricField::from_function(torus(2, n), 2, [](const Coordinates& x) {
    SmallMatrix g(2, 2);
    g << 1.0 + 0.3 * std::sin(x[0]), 0.2 * std::cos(x[1]), 0.2 * std::cos(x[1]), 1.5 + 0.2 * std::cos(x[0] + x[1]);
    return g;
  });
}

}  // namespace

TEST_CASE("grid invariants: point count, wrap-around, pole exclusion") {
  const GridManifold g({Axis::periodic(5, kTwoPi), Axis::colatitude(6), Axis::interval(4, 1.0, 2.0)});
  CHECK(g.size() == 5u * 6u * 4u);
  CHECK(g.stride(0) == 1u);
  CHECK(g.stride(1) == 5u);
  for (std::size_t p = 0; p < g.size(); ++p) CHECK(g.flat_index(g.multi_index(p)) == p);
  const Axis& colat = g.axis(1);
  CHECK(colat.coordinate(0) >= colat.spacing() - 1e-15);
  CHECK(kPi - colat.coordinate(colat.n - 1) >= colat.spacing() - 1e-15);
  CHECK(g.axis(2).coordinate(3) == doctest::Approx(2.0));
  CHECK_THROWS_AS(Axis::periodic(3, 1.0), bcwp::DimensionError);
}

TEST_CASE("spectral matrices differentiate trigonometric polynomials to rounding") {
  for (int n : {16, 17}) {
    const double L = 3.0;
    const auto d1 = spectral_first_matrix(n, L);
    const auto d2 = spectral_second_matrix(n, L);
    Eigen::VectorXd f(n), df(n), ddf(n);
    const double w = kTwoPi / L;
    for (int j = 0; j < n; ++j) {
      const double x = j * L / n;
      f[j] = std::sin(2 * w * x) + std::cos(w * x);
      df[j] = 2 * w * std::cos(2 * w * x) - w * std::sin(w * x);
      ddf[j] = -4 * w * w * std::sin(2 * w * x) - w * w * std::cos(w * x);
    }
    CHECK((d1 * f - df).lpNorm<Eigen::Infinity>() < 1e-11);
    CHECK((d2 * f - ddf).lpNorm<Eigen::Infinity>() < 1e-10);
    CHECK((d1 + d1.transpose()).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("christoffel: flat torus vanishes, symmetric in lower indices") {
  const MetricField flat = MetricField::constant_diagonal(torus(3, 8), {1.0, 1.0, 1.0});
  const ChristoffelField g = christoffel(flat);
  for (int l = 0; l < 3; ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (double v : g.component(l, i, j)) CHECK(v == 0.0);

  const MetricField skew = skew_torus_metric(16);
  const ChristoffelField s = christoffel(skew);
  for (int l = 0; l < 2; ++l)
    for (std::size_t p = 0; p < skew.grid().size(); ++p) CHECK(s(l, 0, 1, p) == s(l, 1, 0, p));
}

TEST_CASE("christoffel: circle with g = (2+sin)^2 converges at second order") {
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const auto grid = circle(n);
    const MetricField g = MetricField::from_function(grid, 1, [](const Coordinates& x) {
      SmallMatrix m(1, 1);
      m(0, 0) = std::pow(2.0 + std::sin(x[0]), 2);
      return m;
    });
    const ChristoffelField gamma = christoffel(g);
    double worst = 0.0;
    for (std::size_t p = 0; p < grid->size(); ++p) {
      const double t = grid->coordinate(p, 0);
      worst = std::max(worst, std::abs(gamma(0, 0, 0, p) - std::cos(t) / (2.0 + std::sin(t))));
    }
    errors.push_back(worst);
  }
  for (double o : observed_orders(errors)) CHECK(o == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("ricci and scalar curvature of a flat torus vanish") {
  const MetricField flat = MetricField::constant_diagonal(torus(3, 8), {1.0, 2.0, 0.5});
  CHECK(ricci(flat).max_abs() == 0.0);
  CHECK(scalar_curvature(flat).max_abs() == 0.0);
}

TEST_CASE("round S^2: Ric = g/r^2 and S = 2/r^2 at second order away from the poles") {
  const double r = 1.3;
  std::vector<double> ric_err, s_err;
  for (int n : {15, 31, 63}) {
    const MetricField g = round_sphere2(n, 8, r);
    const Calculus calc(g);
    const TensorField2 ric = ricci(calc);
    const ScalarField s = scalar_curvature(calc);
    double re = 0.0, se = 0.0;
    for (std::size_t p = 0; p < g.grid().size(); ++p) {
      if (!interior(g.grid(), p, 1)) continue;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) re = std::max(re, std::abs(ric(i, j, p) - g.component(i, j)[p] / (r * r)));
      se = std::max(se, std::abs(s[p] - 2.0 / (r * r)));
    }
    ric_err.push_back(re);
    s_err.push_back(se);
    CHECK(ric.max_asymmetry() == 0.0);
  }
  for (double o : observed_orders(ric_err)) CHECK(o == doctest::Approx(2.0).epsilon(0.1));
  for (double o : observed_orders(s_err)) CHECK(o == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("round S^3: S = 6/r^2 at second order away from the poles") {
  const double r = 0.8;
  std::vector<double> errors;
  for (int n : {15, 31, 63}) {
    const MetricField g = FiberModel::sphere(3, r).realize({n, n, 6}).metric;
    const ScalarField s = scalar_curvature(g);
    double worst = 0.0;
    for (std::size_t p = 0; p < g.grid().size(); ++p)
      if (interior(g.grid(), p, 2)) worst = std::max(worst, std::abs(s[p] - 6.0 / (r * r)));
    errors.push_back(worst);
  }
  for (double o : observed_orders(errors)) CHECK(o == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("product of a flat torus and a round sphere: mixed Ricci block is zero") {
  const auto fiber = FiberModel::sphere(2, 1.0).realize({24, 6});
  const auto base = torus(2, 6);
  const GridPtr product = make_grid(GridManifold::product(*base, *fiber.grid).axes());
  const MetricField g = MetricField::from_function(product, 4, [](const Coordinates& x) {
    SmallMatrix m = SmallMatrix::Zero(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 2) = 1.0;
    m(3, 3) = std::pow(std::sin(x[2]), 2);
    return m;
  });
  const TensorField2 ric = ricci(g);
  for (int i = 0; i < 2; ++i)
    for (int j = 2; j < 4; ++j) CHECK(TensorField2(ric).component(i, j) == std::vector<double>(product->size(), 0.0));
}

TEST_CASE("laplace_beltrami: constants, circle sine, order two") {
  for (Scheme scheme : {Scheme::central2, Scheme::spectral}) {
    const MetricField skew = skew_torus_metric(16);
    const ScalarField one(skew.grid_ptr(), 3.0);
    CHECK(Calculus(skew, scheme).laplace_beltrami(one).max_abs() < 1e-13);
  }
  std::vector<double> errors;
  for (int n : {32, 64, 128}) {
    const auto grid = circle(n);
    const MetricField g = MetricField::constant_diagonal(grid, {1.0});
    const ScalarField f = ScalarField::from_function(grid, [](const Coordinates& x) { return std::sin(x[0]); });
    const ScalarField lap = laplace_beltrami(g, f);
    double worst = 0.0;
    for (std::size_t p = 0; p < grid->size(); ++p) worst = std::max(worst, std::abs(lap[p] + f[p]));
    errors.push_back(worst);
  }
  for (double o : observed_orders(errors)) CHECK(o == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("laplace_beltrami is self-adjoint in the Riemannian measure (random fields)") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Case {
    MetricField metric;
    Scheme scheme;
  };
  std::vector<Case> cases{{skew_torus_metric(12), Scheme::central2},
                          {skew_torus_metric(12), Scheme::spectral},
                          {round_sphere2(12, 10, 1.5), Scheme::central2}};
  for (const auto& c : cases) {
    const Calculus calc(c.metric, c.scheme);
    for (int trial = 0; trial < 5; ++trial) {
      ScalarField f(c.metric.grid_ptr()), w(c.metric.grid_ptr());
      for (std::size_t p = 0; p < f.size(); ++p) {
        f[p] = u(rng);
        w[p] = u(rng);
      }
      const double lhs = calc.integrate(calc.laplace_beltrami(f) * w);
      const double rhs = calc.integrate(f * calc.laplace_beltrami(w));
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (std::abs(lhs) + std::abs(rhs) + 1e-300));
      // discrete integration by parts
      const double ibp = calc.dirichlet_form(f, w);
      CHECK(std::abs(-lhs - ibp) <= 1e-10 * std::abs(ibp));
    }
  }
}

TEST_CASE("spectral integration by parts uses the pointwise metric pairing") {
  const MetricField g = skew_torus_metric(16);
  const Calculus calc(g, Scheme::spectral);
  const RandomTrigField rf(2, 4, 0.0, 1.0, 5), rw(2, 4, 0.0, 1.0, 6);
  const ScalarField f = ScalarField::from_function(g.grid_ptr(), [&](const Coordinates& x) { return rf(x); });
  const ScalarField w = ScalarField::from_function(g.grid_ptr(), [&](const Coordinates& x) { return rw(x); });
  const double lhs = -calc.integrate(calc.laplace_beltrami(f) * w);
  const double rhs = calc.integrate(calc.metric_inner(f, w));
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
}

TEST_CASE("hessian: constants vanish, cos on the circle, trace matches the Laplacian at order two") {
  const auto grid = circle(64);
  const MetricField flat = MetricField::constant_diagonal(grid, {1.0});
  CHECK(hessian(flat, ScalarField(grid, 2.0)).max_abs() == 0.0);
  const ScalarField f = ScalarField::from_function(grid, [](const Coordinates& x) { return std::cos(x[0]); });
  const TensorField2 h = hessian(flat, f);
  for (std::size_t p = 0; p < grid->size(); ++p) CHECK(std::abs(h(0, 0, p) + f[p]) < 2e-3);
  // flat constant metric: compact Hessian trace equals the central2 Laplacian exactly
  const ScalarField lap = laplace_beltrami(flat, f);
  for (std::size_t p = 0; p < grid->size(); ++p) CHECK(h(0, 0, p) == doctest::Approx(lap[p]).epsilon(1e-13));

  std::vector<double> errors;
  for (int n : {15, 31, 63}) {
    const MetricField g = round_sphere2(n, 12, 1.0);
    const Calculus calc(g);
    const ScalarField fs = ScalarField::from_function(g.grid_ptr(), [](const Coordinates& x) {
      return std::cos(x[0]) * (1.0 + 0.2 * std::cos(x[1])) + 0.3 * std::sin(2 * x[0]);
    });
    const TensorField2 hs = calc.hessian(fs);
    CHECK(hs.max_asymmetry() == 0.0);
    const ScalarField tr = calc.trace(hs);
    const ScalarField ls = calc.laplace_beltrami(fs);
    double worst = 0.0;
    for (std::size_t p = 0; p < fs.size(); ++p)
      if (interior(g.grid(), p, 1)) worst = std::max(worst, std::abs(tr[p] - ls[p]));
    errors.push_back(worst);
  }
  for (double o : observed_orders(errors)) CHECK(o == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("gradient_sq and metric_inner: analytic values and pointwise inequalities") {
  const auto grid = circle(128);
  const MetricField flat = MetricField::constant_diagonal(grid, {1.0});
  const ScalarField f = ScalarField::from_function(grid, [](const Coordinates& x) { return std::sin(x[0]); });
  const ScalarField g2 = gradient_sq(flat, f);
  for (std::size_t p = 0; p < grid->size(); ++p)
    CHECK(std::abs(g2[p] - std::pow(std::cos(grid->coordinate(p, 0)), 2)) < 1e-3);
  CHECK(gradient_sq(flat, ScalarField(grid, 4.0)).max_abs() == 0.0);

  const MetricField skew = skew_torus_metric(16);
  const Calculus calc(skew);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RandomTrigField ra(2, 3, 0.0, 1.0, seed), rb(2, 3, 0.0, 1.0, seed + 100);
    const ScalarField a = ScalarField::from_function(skew.grid_ptr(), [&](const Coordinates& x) { return ra(x); });
    const ScalarField b = ScalarField::from_function(skew.grid_ptr(), [&](const Coordinates& x) { return rb(x); });
    const ScalarField aa = calc.gradient_sq(a), bb = calc.gradient_sq(b), ab = calc.metric_inner(a, b),
                      ba = calc.metric_inner(b, a);
    for (std::size_t p = 0; p < a.size(); ++p) {
      CHECK(aa[p] >= -1e-12);
      CHECK(std::abs(ab[p]) <= std::sqrt(aa[p] * bb[p]) + 1e-12);
      CHECK(ab[p] == doctest::Approx(ba[p]).epsilon(1e-14));
    }
    const ScalarField self = calc.metric_inner(a, a);
    for (std::size_t p = 0; p < a.size(); ++p) CHECK(self[p] == aa[p]);
    CHECK(calc.metric_inner(a, ScalarField(skew.grid_ptr(), 2.0)).max_abs() == 0.0);
  }
}

TEST_CASE("singular metrics are reported with their grid index") {
  const auto grid = circle(8);
  try {
    MetricField::from_function(grid, 1, [](const Coordinates& x) {
      SmallMatrix m(1, 1);
      m(0, 0) = std::abs(x[0] - kPi) < 1e-9 ? 0.0 : 1.0;
      return m;
    });
    FAIL("expected a SingularMetricError");
  } catch (const bcwp::SingularMetricError& e) {
    CHECK(e.index() == 4u);
  }
  CHECK_THROWS_AS(MetricField::from_function(grid, 1,
                                             [](const Coordinates& x) {
                                               SmallMatrix m(1, 1);
                                               m(0, 0) = x[0] < kPi ? 1.0 : -1.0;
                                               return m;
                                             }),
                  bcwp::SingularMetricError);
}

TEST_CASE("pseudo-Riemannian metrics record their signature and use |det g|") {
  const MetricField lorentz = MetricField::constant_diagonal(torus(2, 6), {1.0, -4.0});
  CHECK(lorentz.signature() == std::vector<int>{-1, 1});
  CHECK_FALSE(lorentz.riemannian());
  CHECK(lorentz.volume_density()[0] == doctest::Approx(2.0));
}

TEST_CASE("fiber models: S_F consistent with the Ricci kind, realizations curve as expected") {
  CHECK(FiberModel::flat(3).scalar_curvature() == 0.0);
  CHECK(FiberModel::sphere(2, 2.0).scalar_curvature() == doctest::Approx(0.5));
  CHECK(FiberModel::sphere(3, 1.0).scalar_curvature() == doctest::Approx(6.0));
  CHECK(FiberModel::einstein(4, -0.5).scalar_curvature() == doctest::Approx(-2.0));
  CHECK(FiberModel::flat(0).scalar_curvature() == 0.0);
  CHECK_THROWS_AS(FiberModel::flat(0).realize({}), bcwp::DimensionError);
  const auto s2 = FiberModel::einstein(2, 0.25).realize({31, 6});
  const ScalarField s = scalar_curvature(s2.metric);
  for (std::size_t p = 0; p < s.size(); ++p)
    if (interior(*s2.grid, p, 1)) CHECK(std::abs(s[p] - 0.5) < 2e-2);
}

TEST_CASE("csv export lists index, coordinate and value columns") {
  const auto grid = torus(2, 4);
  const ScalarField f = ScalarField::from_function(grid, [](const Coordinates& x) { return x[0] + 10 * x[1]; });
  std::ostringstream out;
  write_fields_csv(out, {{"f", &f}});
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "i0,i1,x0,x1,f");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 16);
}

TEST_CASE("repeated evaluation is bit-identical") {
  const MetricField g = round_sphere2(16, 8, 1.1);
  const ScalarField a = scalar_curvature(g);
  const ScalarField b = scalar_curvature(g);
  CHECK(a.values() == b.values());
}

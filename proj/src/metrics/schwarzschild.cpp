#include "bcwp/metrics/schwarzschild.hpp"

#include "bcwp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace bcwp::metrics {

using geometry::Axis;
using geometry::GridManifold;
using geometry::make_grid;

SchwarzschildNested schwarzschild_nested(const std::vector<double>& u_on_s_grid, const SchwarzschildOptions& options) {
  if (!(options.s_lo > 0.0) || !(options.s_hi > options.s_lo))
    throw DimensionError("schwarzschild: need 0 < s_lo < s_hi");
  if (options.time_sign != 1 && options.time_sign != -1) throw ConfigError("schwarzschild.time_sign must be +1 or -1");
  if (static_cast<int>(u_on_s_grid.size()) != options.n_s)
    throw DimensionError("schwarzschild: u profile needs one sample per s node");

  const GridPtr s_grid = make_grid({Axis::interval(options.n_s, options.s_lo, options.s_hi)});
  const ScalarField u(s_grid, u_on_s_grid);
  u.require_positive("u_profile");

  SchwarzschildNested out;

  // inner: (psi_1, -1) over ds^2 with fiber +-dy^2
  const GridPtr y_grid = make_grid({Axis::periodic(options.n_y, options.y_period)});
  out.inner_fiber = {y_grid, MetricField::constant_diagonal(y_grid, {static_cast<double>(options.time_sign)})};
  out.inner.base = BaseManifold::brute_force(MetricField::constant_diagonal(s_grid, {1.0}));
  out.inner.fiber = FiberModel::flat(1);
  out.inner.psi = ScalarField::from_function(s_grid, [](const geometry::Coordinates& x) {
                    return 2.0 * std::pow(x[0], 0.25);
                  }) * u;
  out.inner.mu = Rational(-1);
  const MetricField inner_metric = assemble_product_metric(out.inner.to_bcwp(), out.inner_fiber);

  // outer: (psi_2, -1/2) over the inner metric with fiber g_F
  out.outer_fiber = options.fiber.realize(options.fiber_points);
  out.outer.base = BaseManifold::brute_force(inner_metric);
  out.outer.fiber = options.fiber;
  out.outer.psi = ScalarField::from_function(inner_metric.grid_ptr(),
                                             [](const geometry::Coordinates& x) { return std::sqrt(x[0]); });
  out.outer.mu = Rational(-1, 2);
  out.assembled = assemble_product_metric(out.outer.to_bcwp(), out.outer_fiber);

  // pull back to (r, t): ds/dr = 2r, dy/dt = 1/2
  const GridManifold& grid = out.assembled.grid();
  const int dim = out.assembled.dim();
  const std::size_t base_size = inner_metric.grid().size();
  const int k = out.outer_fiber.metric.dim();
  double worst = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const double s = grid.coordinate(p, 0);
    const double r = std::sqrt(s);
    const double uu = u[static_cast<std::size_t>(grid.index_along(p, 0))];
    const std::size_t f = p / base_size;
    auto g = [&](int i, int j) { return out.assembled.component(i, j)[p]; };
    double jac[2] = {2.0 * r, 0.5};
    double direct[2] = {1.0 / (uu * uu), options.time_sign * uu * uu};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        const double pulled = g(i, j) * jac[i] * jac[j];
        worst = std::max(worst, std::abs(pulled - (i == j ? direct[i] : 0.0)));
      }
    for (int i = 0; i < 2; ++i)
      for (int a = 2; a < dim; ++a) worst = std::max(worst, std::abs(g(i, a)));
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b)
        worst = std::max(worst, std::abs(g(2 + a, 2 + b) - r * r * out.outer_fiber.metric.component(a, b)[f]));
  }
  out.max_mismatch = worst;
  return out;
}

SchwarzschildNested schwarzschild_nested(const std::function<double(double)>& u_of_r,
                                         const SchwarzschildOptions& options) {
  const Axis s_axis = Axis::interval(options.n_s, options.s_lo, options.s_hi);
  std::vector<double> samples(static_cast<std::size_t>(options.n_s));
  for (int j = 0; j < options.n_s; ++j) samples[static_cast<std::size_t>(j)] = u_of_r(std::sqrt(s_axis.coordinate(j)));
  return schwarzschild_nested(samples, options);
}

}  // namespace bcwp::metrics

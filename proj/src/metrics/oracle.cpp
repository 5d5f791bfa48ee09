#include "bcwp/metrics/oracle.hpp"

#include "bcwp/errors.hpp"
#include "bcwp/geometry/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bcwp::metrics {

using geometry::AxisKind;
using geometry::GridManifold;

ScalarField brute_force_scalar(const BcwpSpec& spec, const FiberModel::Realization& fiber) {
  return geometry::scalar_curvature(assemble_product_metric(spec, fiber), Scheme::central2);
}

bool comparison_point(const GridManifold& grid, std::size_t p, int coarse_intervals) {
  constexpr double pi = std::numbers::pi;
  for (int a = 0; a < grid.dim(); ++a) {
    if (grid.axis(a).kind != AxisKind::colatitude) continue;
    const double t = grid.coordinate(p, a);
    if (t < pi / 4 - 1e-12 || t > 3 * pi / 4 + 1e-12) return false;
    const double j = t * coarse_intervals / pi;
    if (std::abs(j - std::round(j)) > 1e-9) return false;
  }
  return true;
}

BlockErrors compare_ricci_blocks(const BcwpSpec& spec, const FiberModel::Realization& fiber,
                                 const RicciBlocks& closed, int coarse_intervals) {
  const MetricField g = assemble_product_metric(spec, fiber);
  const TensorField2 ric = geometry::ricci(g, Scheme::central2);
  const ScalarField factor = closed.fiber_factor();
  const int m = spec.m();
  const int k = spec.k();
  const std::size_t nb = spec.base.grid().size();
  BlockErrors e;
  for (std::size_t p = 0; p < g.grid().size(); ++p) {
    if (!comparison_point(g.grid(), p, coarse_intervals)) continue;
    const std::size_t b = p % nb;
    const std::size_t f = p / nb;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        e.base_block = std::max(e.base_block, std::abs(ric(i, j, p) - closed.base_block(i, j, b)));
    for (int a = 0; a < k; ++a)
      for (int c = 0; c < k; ++c)
        e.fiber_block = std::max(
            e.fiber_block, std::abs(ric(m + a, m + c, p) - factor[b] * fiber.metric.component(a, c)[f]));
    for (int i = 0; i < m; ++i)
      for (int a = 0; a < k; ++a) e.mixed_block = std::max(e.mixed_block, std::abs(ric(i, m + a, p)));
  }
  return e;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> out;
  for (std::size_t i = 1; i < errors.size(); ++i) out.push_back(std::log2(errors[i - 1] / errors[i]));
  return out;
}

OracleLadder scalar_oracle_ladder(const std::function<OracleCase(int)>& make_case, const std::vector<int>& ladder) {
  if (ladder.empty()) throw ConfigError("oracle ladder: no refinement levels");
  const int coarse = *std::min_element(ladder.begin(), ladder.end());
  OracleLadder out;
  std::vector<double> errors;
  for (int n : ladder) {
    const OracleCase c = make_case(n);
    const ScalarField reduced = scalar_sbcwp(c.spec);
    const BcwpSpec cw = c.spec.to_bcwp();
    const ScalarField closed = scalar_bcwp_closed_form(cw);
    const ScalarField brute = brute_force_scalar(cw, c.fiber);

    OracleLevel level;
    level.n = n;
    level.scale = reduced.max_abs();
    level.reduced_vs_closed = (reduced - closed).max_abs() / std::max(level.scale, 1.0);
    const std::size_t nb = reduced.size();
    for (std::size_t p = 0; p < brute.size(); ++p)
      if (comparison_point(brute.grid(), p, coarse))
        level.brute_force_error = std::max(level.brute_force_error, std::abs(brute[p] - reduced[p % nb]));
    errors.push_back(level.brute_force_error);
    out.levels.push_back(level);
  }
  out.orders = observed_orders(errors);
  return out;
}

}  // namespace bcwp::metrics

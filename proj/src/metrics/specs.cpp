#include "bcwp/metrics/specs.hpp"

#include "bcwp/errors.hpp"
#include "bcwp/geometry/curvature.hpp"

#include <cmath>

namespace bcwp::metrics {

using geometry::GridManifold;
using geometry::make_grid;

BaseManifold BaseManifold::brute_force(MetricField metric, Scheme scheme) {
  BaseManifold base;
  auto calc = std::make_shared<const geometry::Calculus>(std::move(metric), scheme);
  base.ricci = geometry::ricci(*calc);
  base.scalar = calc->trace(base.ricci);
  base.calculus = std::move(calc);
  return base;
}

BaseManifold BaseManifold::with_ricci(MetricField metric, TensorField2 ricci, Scheme scheme) {
  BaseManifold base;
  auto calc = std::make_shared<const geometry::Calculus>(std::move(metric), scheme);
  geometry::require_same_grid(ricci.grid(), calc->grid(), "BaseManifold::with_ricci");
  if (ricci.dim() != calc->metric().dim()) throw DimensionError("BaseManifold::with_ricci: tensor dimension");
  base.scalar = calc->trace(ricci);
  base.ricci = std::move(ricci);
  base.calculus = std::move(calc);
  return base;
}

void BcwpSpec::validate() const {
  if (!base.calculus) throw DimensionError("bcwp spec without a base");
  geometry::require_same_grid(c.grid(), base.grid(), "bcwp spec: c");
  geometry::require_same_grid(w.grid(), base.grid(), "bcwp spec: w");
  c.require_positive("c");
  w.require_positive("w");
}

void SbcwpSpec::validate() const {
  if (!base.calculus) throw DimensionError("(psi,mu) spec without a base");
  geometry::require_same_grid(psi.grid(), base.grid(), "(psi,mu) spec: psi");
  psi.require_positive("psi");
}

BcwpSpec SbcwpSpec::to_bcwp() const {
  validate();
  return {base, fiber, psi.pow(mu_value()), psi};
}

ScalarField lift_fiber_field(const ScalarField& fiber_field, const GridPtr& product) {
  const GridManifold& fiber = fiber_field.grid();
  const int offset = product->dim() - fiber.dim();
  if (offset < 0) throw DimensionError("lift_fiber_field: product has fewer axes than fiber");
  for (int a = 0; a < fiber.dim(); ++a)
    if (!(product->axis(offset + a) == fiber.axis(a)))
      throw DimensionError("lift_fiber_field: product does not end with fiber axes");
  const std::size_t base_size = product->size() / fiber.size();
  std::vector<double> v(product->size());
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = fiber_field[p / base_size];
  return ScalarField(product, std::move(v));
}

MetricField assemble_product_metric(const BcwpSpec& spec, const FiberModel::Realization& fiber) {
  spec.validate();
  const MetricField& gb = spec.base.metric();
  const MetricField& gf = fiber.metric;
  const int m = gb.dim();
  const int k = gf.dim();
  if (k != spec.k()) throw DimensionError("assemble_product_metric: fiber realization dimension differs from k");
  const GridPtr product = make_grid(GridManifold::product(gb.grid(), gf.grid()).axes());
  const std::size_t nb = gb.grid().size();
  const std::size_t n = product->size();
  const int dim = m + k;

  std::vector<std::vector<double>> comps(static_cast<std::size_t>(dim * dim), std::vector<double>(n, 0.0));
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t b = p % nb;
    const std::size_t f = p / nb;
    const double c2 = spec.c[b] * spec.c[b];
    const double w2 = spec.w[b] * spec.w[b];
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) comps[static_cast<std::size_t>(i * dim + j)][p] = c2 * gb.component(i, j)[b];
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j)
        comps[static_cast<std::size_t>((m + i) * dim + m + j)][p] = w2 * gf.component(i, j)[f];
  }
  return MetricField(product, dim, std::move(comps));
}

}  // namespace bcwp::metrics

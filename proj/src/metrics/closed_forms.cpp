#include "bcwp/metrics/closed_forms.hpp"

#include "bcwp/errors.hpp"

namespace bcwp::metrics {

ScalarField RicciBlocks::fiber_factor() const {
  ScalarField f = -fiber_warp;
  f += fiber_nu;
  return f;
}

ScalarField scalar_bcwp_closed_form(const BcwpSpec& spec) {
  spec.validate();
  const geometry::Calculus& calc = *spec.base.calculus;
  const double m = spec.m();
  const double k = spec.k();
  const ScalarField& c = spec.c;
  const ScalarField& w = spec.w;
  const ScalarField lap_c = calc.laplace_beltrami(c) / c;
  const ScalarField lap_w = calc.laplace_beltrami(w) / w;
  const ScalarField grad_c = calc.gradient_sq(c) / (c * c);
  const ScalarField grad_w = calc.gradient_sq(w) / (w * w);
  const ScalarField cross = calc.metric_inner(w, c) / (w * c);

  ScalarField rhs = spec.base.scalar;
  rhs += spec.fiber.scalar_curvature() * (c * c) / (w * w);
  rhs -= 2.0 * (m - 1.0) * lap_c;
  rhs -= 2.0 * k * lap_w;
  rhs -= (m - 4.0) * (m - 1.0) * grad_c;
  rhs -= 2.0 * k * (m - 2.0) * cross;
  rhs -= k * (k - 1.0) * grad_w;
  return rhs / (c * c);
}

RicciBlocks ricci_bcwp_closed_form(const BcwpSpec& spec) {
  spec.validate();
  const geometry::Calculus& calc = *spec.base.calculus;
  const double m = spec.m();
  const double k = spec.k();
  const ScalarField& c = spec.c;
  const ScalarField& w = spec.w;
  const ScalarField inv_c = c.pow(-1.0);
  const ScalarField inv_w = w.pow(-1.0);

  TensorField2 bb = spec.base.ricci;
  TensorField2 hc = calc.hessian(c);
  hc.scale((m - 2.0) * inv_c);
  TensorField2 hw = calc.hessian(w);
  hw.scale(k * inv_w);
  bb -= hc;
  bb -= hw;
  TensorField2 dcdc = calc.symmetric_product(c, c);
  dcdc.scale(2.0 * (m - 2.0) * inv_c * inv_c);
  bb += dcdc;
  // dc dw + dw dc = 2 sym(dc, dw)
  TensorField2 dcdw = calc.symmetric_product(c, w);
  dcdw.scale(2.0 * k * inv_c * inv_w);
  bb += dcdw;

  const ScalarField grad_c = calc.gradient_sq(c) * inv_c * inv_c;
  const ScalarField grad_w = calc.gradient_sq(w) * inv_w * inv_w;
  const ScalarField cross = calc.metric_inner(w, c) * inv_w * inv_c;
  const ScalarField lap_c = calc.laplace_beltrami(c) * inv_c;
  const ScalarField lap_w = calc.laplace_beltrami(w) * inv_w;

  TensorField2 gterm = calc.metric_tensor();
  gterm.scale((m - 3.0) * grad_c + lap_c + k * cross);
  bb -= gterm;

  RicciBlocks blocks;
  blocks.base_block = std::move(bb);
  blocks.fiber_warp = (w * w) * inv_c * inv_c * ((m - 2.0) * cross + lap_w + (k - 1.0) * grad_w);
  blocks.fiber_nu = spec.fiber.ricci_constant();
  return blocks;
}

ScalarField scalar_from_blocks(const RicciBlocks& blocks, const BcwpSpec& spec) {
  spec.validate();
  const ScalarField base_trace = spec.base.calculus->trace(blocks.base_block);
  return base_trace / (spec.c * spec.c) + static_cast<double>(spec.k()) * blocks.fiber_factor() / (spec.w * spec.w);
}

}  // namespace bcwp::metrics

#pragma once

#include "bcwp/exponents/rational.hpp"
#include "bcwp/geometry/calculus.hpp"
#include "bcwp/geometry/fiber.hpp"

#include <memory>

namespace bcwp::metrics {

using exponents::Rational;
using geometry::FiberModel;
using geometry::GridPtr;
using geometry::MetricField;
using geometry::ScalarField;
using geometry::Scheme;
using geometry::TensorField2;

/// Base (B_m, g_B) together with its operators and curvature.
/// Curvature is either computed by brute force on the grid or supplied analytically.
struct BaseManifold {
  std::shared_ptr<const geometry::Calculus> calculus;
  TensorField2 ricci;
  ScalarField scalar;

  static BaseManifold brute_force(MetricField metric, Scheme scheme = Scheme::central2);
  /// Ric_B given in closed form; S_B is its metric trace.
  static BaseManifold with_ricci(MetricField metric, TensorField2 ricci, Scheme scheme = Scheme::central2);

  int dim() const { return metric().dim(); }
  const MetricField& metric() const { return calculus->metric(); }
  const GridPtr& grid_ptr() const { return calculus->grid_ptr(); }
  const geometry::GridManifold& grid() const { return calculus->grid(); }
  Scheme scheme() const { return calculus->scheme(); }
};

/// [c,w] metric c^2 g_B + w^2 g_F.
struct BcwpSpec {
  BaseManifold base;
  FiberModel fiber = FiberModel::flat(0);
  ScalarField c;
  ScalarField w;

  int m() const { return base.dim(); }
  int k() const { return fiber.k(); }
  /// c, w positive and on the base grid.
  void validate() const;
};

/// (psi,mu) metric: c = psi^mu, w = psi.
struct SbcwpSpec {
  BaseManifold base;
  FiberModel fiber = FiberModel::flat(0);
  ScalarField psi;
  Rational mu;

  int m() const { return base.dim(); }
  int k() const { return fiber.k(); }
  double mu_value() const { return exponents::to_double(mu); }
  void validate() const;
  BcwpSpec to_bcwp() const;
};

/// Block-diagonal metric on base x fiber: c^2 g_B lifted along the fiber axes and w^2 g_F.
/// The product grid lists the base axes first.
MetricField assemble_product_metric(const BcwpSpec& spec, const FiberModel::Realization& fiber);

/// Value of a field on the fiber grid extended to base x fiber.
ScalarField lift_fiber_field(const ScalarField& fiber_field, const GridPtr& product);

}  // namespace bcwp::metrics

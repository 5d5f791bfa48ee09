#pragma once

#include "bcwp/geometry/differences.hpp"
#include "bcwp/geometry/fields.hpp"

#include <vector>

namespace bcwp::geometry {

/// Christoffel symbols of the second kind from differentiated metric components.
ChristoffelField christoffel(const MetricField& metric, Scheme scheme = Scheme::central2);

/// First- and second-order operators of one metric, sharing a differentiator, the Christoffel
/// symbols and (central2) the stiffness matrix of the Laplacian.
///
/// central2 Laplacian: Lap f = -W^{-1} K f with W = |g|^{1/2} * cell volume and K symmetric;
/// diagonal terms use face fluxes with averaged coefficients (compact, M-matrix for diagonal
/// Riemannian metrics), mixed terms use D_a^T diag(|g|^{1/2} g^{ab}) D_b. Non-periodic axes get
/// zero flux through their ends. spectral Laplacian: |g|^{-1/2} D_a(|g|^{1/2} g^{ab} D_b f).
class Calculus {
 public:
  explicit Calculus(MetricField metric, Scheme scheme = Scheme::central2);

  const MetricField& metric() const { return metric_; }
  const GridPtr& grid_ptr() const { return metric_.grid_ptr(); }
  const GridManifold& grid() const { return metric_.grid(); }
  Scheme scheme() const { return diff_.scheme(); }
  const Differentiator& differentiator() const { return diff_; }
  const ChristoffelField& christoffel() const { return gamma_; }

  /// Coordinate partials d_a f, one array per axis.
  std::vector<std::vector<double>> partials(const ScalarField& f) const;
  ScalarField laplace_beltrami(const ScalarField& f) const;
  TensorField2 hessian(const ScalarField& f) const;
  ScalarField gradient_sq(const ScalarField& f) const;
  ScalarField metric_inner(const ScalarField& f, const ScalarField& c) const;
  /// Symmetrized product (df (x) dc + dc (x) df)/2; equals df (x) df when f = c.
  TensorField2 symmetric_product(const ScalarField& f, const ScalarField& c) const;
  /// g^{ij} T_ij
  ScalarField trace(const TensorField2& t) const;
  /// The metric itself as a TensorField2.
  TensorField2 metric_tensor() const;

  /// Riemannian measure weights |g|^{1/2} * cell volume.
  const std::vector<double>& weights() const { return weights_; }
  double integrate(const ScalarField& f) const;
  /// Discrete Dirichlet form: f^T K w (central2) or sum W g(grad f, grad w) (spectral).
  /// Equals the integral of (-Lap f) w by construction.
  double dirichlet_form(const ScalarField& f, const ScalarField& w) const;
  /// Symmetric stiffness matrix K (central2 only).
  const SparseMatrix& stiffness() const;

 private:
  MetricField metric_;
  Differentiator diff_;
  ChristoffelField gamma_;
  std::vector<double> weights_;
  SparseMatrix stiffness_;
};

ScalarField laplace_beltrami(const MetricField& metric, const ScalarField& f, Scheme scheme = Scheme::central2);
TensorField2 hessian(const MetricField& metric, const ScalarField& f, Scheme scheme = Scheme::central2);
ScalarField gradient_sq(const MetricField& metric, const ScalarField& f, Scheme scheme = Scheme::central2);
ScalarField metric_inner(const MetricField& metric, const ScalarField& f, const ScalarField& c,
                         Scheme scheme = Scheme::central2);

}  // namespace bcwp::geometry

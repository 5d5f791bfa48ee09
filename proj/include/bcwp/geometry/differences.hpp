#pragma once

#include "bcwp/geometry/grid.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <string>
#include <vector>

namespace bcwp::geometry {

/// central2: second-order centred differences, one-sided second-order stencils at the ends of
/// non-periodic axes. spectral: Fourier differentiation matrices, periodic axes only.
enum class Scheme { central2, spectral };

std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);

using SparseMatrix = Eigen::SparseMatrix<double>;

/// Partial derivatives of grid functions along one axis.
class Differentiator {
 public:
  Differentiator(GridPtr grid, Scheme scheme);

  Scheme scheme() const { return scheme_; }
  const GridManifold& grid() const { return *grid_; }

  std::vector<double> first(const std::vector<double>& f, int axis) const;
  /// Second derivative along one axis with a compact stencil.
  std::vector<double> second(const std::vector<double>& f, int axis) const;
  /// d^2 f / dx_a dx_b; a == b falls back to second().
  std::vector<double> mixed(const std::vector<double>& f, int a, int b) const;

  /// first() as a sparse matrix over the whole grid (central2 only).
  SparseMatrix first_matrix(int axis) const;

 private:
  template <class Kernel>
  void along_lines(const std::vector<double>& f, int axis, std::vector<double>& out, Kernel kernel) const;
  void first_line(const double* in, double* out, int axis) const;
  void second_line(const double* in, double* out, int axis) const;

  GridPtr grid_;
  Scheme scheme_;
  std::vector<Eigen::MatrixXd> d1_;
  std::vector<Eigen::MatrixXd> d2_;
};

/// Fourier first- and second-derivative matrices on n equispaced nodes of a period-`length` circle.
Eigen::MatrixXd spectral_first_matrix(int n, double length);
Eigen::MatrixXd spectral_second_matrix(int n, double length);

}  // namespace bcwp::geometry

#pragma once

#include "bcwp/geometry/grid.hpp"

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace bcwp::geometry {

/// Small dense matrix with a compile-time size cap; per-point algebra never allocates.
using SmallMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 8, 8>;

/// Coordinates of one grid point, one entry per axis.
using Coordinates = std::vector<double>;

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double value = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);
  static ScalarField from_function(GridPtr grid, const std::function<double(const Coordinates&)>& f);

  const GridManifold& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double min() const;
  double max() const;
  double max_abs() const;
  /// Throws NonPositiveFieldError naming `name` at the first sample <= 0 or non-finite.
  void require_positive(const std::string& name) const;

  ScalarField map(const std::function<double(double)>& f) const;
  /// Pointwise power; requires positive samples unless the exponent is an integer.
  ScalarField pow(double exponent) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(const ScalarField& o);
  ScalarField& operator/=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, const ScalarField& b);
ScalarField operator/(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);
ScalarField operator*(ScalarField a, double s);
ScalarField operator+(ScalarField a, double s);
ScalarField operator-(ScalarField a);

/// Rank-2 field stored component-major: component (i,j) is a contiguous array over the grid.
class TensorField2 {
 public:
  TensorField2() = default;
  TensorField2(GridPtr grid, int dim);

  const GridManifold& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return dim_; }
  std::vector<double>& component(int i, int j) { return comps_[static_cast<std::size_t>(i * dim_ + j)]; }
  const std::vector<double>& component(int i, int j) const {
    return comps_[static_cast<std::size_t>(i * dim_ + j)];
  }
  double operator()(int i, int j, std::size_t p) const { return component(i, j)[p]; }
  double& operator()(int i, int j, std::size_t p) { return component(i, j)[p]; }
  SmallMatrix at(std::size_t p) const;

  double max_asymmetry() const;
  double max_abs() const;
  /// Replaces T by (T + T^t)/2 so the field is exactly symmetric.
  void symmetrize();

  TensorField2& operator+=(const TensorField2& o);
  TensorField2& operator-=(const TensorField2& o);
  /// T_ij(p) *= s(p)
  TensorField2& scale(const ScalarField& s);
  TensorField2& scale(double s);

 private:
  GridPtr grid_;
  int dim_ = 0;
  std::vector<std::vector<double>> comps_;
};

TensorField2 operator-(TensorField2 a, const TensorField2& b);
TensorField2 operator+(TensorField2 a, const TensorField2& b);

/// Symmetric metric with cached inverse and volume density |det g|^(1/2).
/// Signature (sorted eigenvalue signs) is checked constant over the grid.
class MetricField {
 public:
  MetricField() = default;
  /// Builds from the upper triangle of `components` (dim*dim arrays, row-major index i*dim+j).
  MetricField(GridPtr grid, int dim, std::vector<std::vector<double>> components);
  static MetricField from_function(GridPtr grid, int dim,
                                   const std::function<SmallMatrix(const Coordinates&)>& f);
  /// g = diag(factors) with constant entries.
  static MetricField constant_diagonal(GridPtr grid, const std::vector<double>& diagonal);

  const GridManifold& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  int dim() const { return dim_; }
  const std::vector<double>& component(int i, int j) const {
    return g_[static_cast<std::size_t>(i * dim_ + j)];
  }
  const std::vector<double>& inverse_component(int i, int j) const {
    return ginv_[static_cast<std::size_t>(i * dim_ + j)];
  }
  const std::vector<double>& volume_density() const { return density_; }
  const std::vector<int>& signature() const { return signature_; }
  bool riemannian() const;
  /// True when every off-diagonal component is identically zero.
  bool diagonal() const;
  SmallMatrix at(std::size_t p) const;

 private:
  void finalize();

  GridPtr grid_;
  int dim_ = 0;
  std::vector<std::vector<double>> g_;
  std::vector<std::vector<double>> ginv_;
  std::vector<double> density_;
  std::vector<int> signature_;
};

/// Rank-3 field Gamma^l_ij stored as component arrays indexed (l*dim + i)*dim + j.
class ChristoffelField {
 public:
  ChristoffelField() = default;
  ChristoffelField(GridPtr grid, int dim);
  int dim() const { return dim_; }
  const GridManifold& grid() const { return *grid_; }
  std::vector<double>& component(int l, int i, int j) { return comps_[index(l, i, j)]; }
  const std::vector<double>& component(int l, int i, int j) const { return comps_[index(l, i, j)]; }
  double operator()(int l, int i, int j, std::size_t p) const { return comps_[index(l, i, j)][p]; }

 private:
  std::size_t index(int l, int i, int j) const { return static_cast<std::size_t>((l * dim_ + i) * dim_ + j); }
  GridPtr grid_;
  int dim_ = 0;
  std::vector<std::vector<double>> comps_;
};

/// Extends a base field to base x fiber by constancy along the fiber axes.
/// Requires the product grid to start with the base axes.
ScalarField lift_to_product(const ScalarField& base_field, const GridPtr& product);

/// Coordinates of point p.
Coordinates coordinates_of(const GridManifold& grid, std::size_t p);

}  // namespace bcwp::geometry

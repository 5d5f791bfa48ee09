#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace bcwp::geometry {

enum class AxisKind {
  periodic,    ///< n nodes lo + j*L/n, indices wrap modulo n
  colatitude,  ///< n nodes j*h, j = 1..n, h = pi/(n+1); both poles excluded by one spacing
  interval,    ///< n nodes on the closed segment [lo, hi]
};

std::string to_string(AxisKind kind);

struct Axis {
  AxisKind kind = AxisKind::periodic;
  int n = 0;
  double lo = 0.0;
  double hi = 0.0;  ///< lo + period for periodic axes

  static Axis periodic(int n, double length, double lo = 0.0);
  static Axis colatitude(int n);
  static Axis interval(int n, double lo, double hi);

  double spacing() const;
  double coordinate(int j) const;
  bool wraps() const { return kind == AxisKind::periodic; }
  bool operator==(const Axis&) const = default;
};

/// Structured coordinate grid. Axis 0 varies fastest in the flat index.
class GridManifold {
 public:
  explicit GridManifold(std::vector<Axis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  std::size_t size() const { return size_; }
  const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  const std::vector<Axis>& axes() const { return axes_; }
  std::size_t stride(int a) const { return strides_[static_cast<std::size_t>(a)]; }
  double spacing(int a) const { return axis(a).spacing(); }

  /// Product of the spacings: coordinate volume of one cell.
  double cell_volume() const;
  int index_along(std::size_t point, int a) const;
  double coordinate(std::size_t point, int a) const;
  std::vector<int> multi_index(std::size_t point) const;
  std::size_t flat_index(const std::vector<int>& multi) const;

  bool all_periodic() const;
  bool operator==(const GridManifold& other) const { return axes_ == other.axes_; }

  /// Axes of `first` followed by axes of `second`.
  static GridManifold product(const GridManifold& first, const GridManifold& second);

 private:
  std::vector<Axis> axes_;
  std::vector<std::size_t> strides_;
  std::size_t size_ = 0;
};

using GridPtr = std::shared_ptr<const GridManifold>;

GridPtr make_grid(std::vector<Axis> axes);

/// Throws DimensionError unless both grids have identical axes.
void require_same_grid(const GridManifold& a, const GridManifold& b, const std::string& context);

}  // namespace bcwp::geometry

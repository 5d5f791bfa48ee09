#include "bcwp/geometry/grid.hpp"

#include "bcwp/errors.hpp"

#include <numbers>

namespace bcwp::geometry {

std::string to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::periodic: return "periodic";
    case AxisKind::colatitude: return "colatitude";
    case AxisKind::interval: return "interval";
  }
  return "unknown";
}

Axis Axis::periodic(int n, double length, double lo) {
  if (n < 4) throw DimensionError("periodic axis needs n >= 4, got " + std::to_string(n));
  if (!(length > 0.0)) throw DimensionError("periodic axis needs a positive period");
  return {AxisKind::periodic, n, lo, lo + length};
}

Axis Axis::colatitude(int n) {
  if (n < 4) throw DimensionError("colatitude axis needs n >= 4, got " + std::to_string(n));
  const double h = std::numbers::pi / (n + 1);
  return {AxisKind::colatitude, n, h, std::numbers::pi - h};
}

Axis Axis::interval(int n, double lo, double hi) {
  if (n < 4) throw DimensionError("interval axis needs n >= 4, got " + std::to_string(n));
  if (!(hi > lo)) throw DimensionError("interval axis needs hi > lo");
  return {AxisKind::interval, n, lo, hi};
}

double Axis::spacing() const {
  switch (kind) {
    case AxisKind::periodic: return (hi - lo) / n;
    case AxisKind::colatitude: return std::numbers::pi / (n + 1);
    case AxisKind::interval: return (hi - lo) / (n - 1);
  }
  return 0.0;
}

double Axis::coordinate(int j) const { return lo + j * spacing(); }

GridManifold::GridManifold(std::vector<Axis> axes) : axes_(std::move(axes)) {
  strides_.resize(axes_.size());
  size_ = 1;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (axes_[a].n < 4) throw DimensionError("grid axis " + std::to_string(a) + " has fewer than 4 points");
    strides_[a] = size_;
    size_ *= static_cast<std::size_t>(axes_[a].n);
  }
}

double GridManifold::cell_volume() const {
  double v = 1.0;
  for (const Axis& ax : axes_) v *= ax.spacing();
  return v;
}

int GridManifold::index_along(std::size_t point, int a) const {
  return static_cast<int>((point / stride(a)) % static_cast<std::size_t>(axis(a).n));
}

double GridManifold::coordinate(std::size_t point, int a) const { return axis(a).coordinate(index_along(point, a)); }

std::vector<int> GridManifold::multi_index(std::size_t point) const {
  std::vector<int> out(axes_.size());
  for (int a = 0; a < dim(); ++a) out[static_cast<std::size_t>(a)] = index_along(point, a);
  return out;
}

std::size_t GridManifold::flat_index(const std::vector<int>& multi) const {
  std::size_t p = 0;
  for (int a = 0; a < dim(); ++a) p += static_cast<std::size_t>(multi[static_cast<std::size_t>(a)]) * stride(a);
  return p;
}

bool GridManifold::all_periodic() const {
  for (const Axis& ax : axes_)
    if (!ax.wraps()) return false;
  return true;
}

GridManifold GridManifold::product(const GridManifold& first, const GridManifold& second) {
  std::vector<Axis> axes = first.axes_;
  axes.insert(axes.end(), second.axes_.begin(), second.axes_.end());
  return GridManifold(std::move(axes));
}

GridPtr make_grid(std::vector<Axis> axes) { return std::make_shared<const GridManifold>(std::move(axes)); }

void require_same_grid(const GridManifold& a, const GridManifold& b, const std::string& context) {
  if (!(a == b)) throw DimensionError(context + ": fields live on different grids");
}

}  // namespace bcwp::geometry

#include "bcwp/geometry/fiber.hpp"

#include "bcwp/errors.hpp"

#include <cmath>
#include <numbers>

namespace bcwp::geometry {

std::string to_string(FiberKind kind) {
  switch (kind) {
    case FiberKind::flat: return "flat";
    case FiberKind::sphere: return "sphere";
    case FiberKind::einstein: return "einstein";
  }
  return "unknown";
}

FiberModel::FiberModel(int k, FiberKind kind, double radius, double nu)
    : k_(k), kind_(kind), radius_(radius), nu_(nu) {
  if (k < 0) throw DimensionError("fiber dimension must be >= 0");
}

FiberModel FiberModel::flat(int k) { return FiberModel(k, FiberKind::flat, 1.0, 0.0); }

FiberModel FiberModel::sphere(int k, double radius) {
  if (!(radius > 0.0)) throw DimensionError("sphere fiber needs a positive radius");
  if (k < 1) throw DimensionError("sphere fiber needs k >= 1");
  return FiberModel(k, FiberKind::sphere, radius, 0.0);
}

FiberModel FiberModel::einstein(int k, double nu) { return FiberModel(k, FiberKind::einstein, 1.0, nu); }

double FiberModel::ricci_constant() const {
  switch (kind_) {
    case FiberKind::flat: return 0.0;
    case FiberKind::sphere: return (k_ - 1) / (radius_ * radius_);
    case FiberKind::einstein: return nu_;
  }
  return 0.0;
}

double FiberModel::scalar_curvature() const { return k_ * ricci_constant(); }

FiberModel::Realization FiberModel::realize(const std::vector<int>& points) const {
  if (k_ == 0) throw DimensionError("a zero-dimensional fiber has no grid realization");
  if (static_cast<int>(points.size()) != k_)
    throw DimensionError("fiber realization needs one node count per fiber axis");
  const double two_pi = 2.0 * std::numbers::pi;

  bool round = kind_ == FiberKind::sphere;
  double r = radius_;
  if (kind_ == FiberKind::einstein) {
    if (nu_ == 0.0) {
      round = false;
    } else if (nu_ > 0.0 && k_ >= 2) {
      round = true;
      r = std::sqrt((k_ - 1) / nu_);
    } else {
      throw DimensionError("no grid realization for an Einstein fiber with nu = " + std::to_string(nu_));
    }
  }

  std::vector<Axis> axes;
  if (!round) {
    for (int a = 0; a < k_; ++a) axes.push_back(Axis::periodic(points[static_cast<std::size_t>(a)], two_pi));
    GridPtr grid = make_grid(std::move(axes));
    MetricField metric = MetricField::constant_diagonal(grid, std::vector<double>(static_cast<std::size_t>(k_), 1.0));
    return {grid, std::move(metric)};
  }
  for (int a = 0; a + 1 < k_; ++a) axes.push_back(Axis::colatitude(points[static_cast<std::size_t>(a)]));
  axes.push_back(Axis::periodic(points.back(), two_pi));
  GridPtr grid = make_grid(std::move(axes));
  const int k = k_;
  MetricField metric = MetricField::from_function(grid, k, [k, r](const Coordinates& x) {
    SmallMatrix g = SmallMatrix::Zero(k, k);
    double factor = r * r;
    for (int a = 0; a < k; ++a) {
      g(a, a) = factor;
      if (a + 1 < k) factor *= std::pow(std::sin(x[static_cast<std::size_t>(a)]), 2);
    }
    return g;
  });
  return {grid, std::move(metric)};
}

}  // namespace bcwp::geometry

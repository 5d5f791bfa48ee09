#pragma once

#include "bcwp/geometry/fields.hpp"

#include <string>
#include <vector>

namespace bcwp::geometry {

enum class FiberKind { flat, sphere, einstein };

std::string to_string(FiberKind kind);

/// Fiber (F_k, g_F) known analytically through its Ricci tensor Ric_F = nu g_F.
class FiberModel {
 public:
  static FiberModel flat(int k);
  static FiberModel sphere(int k, double radius);
  static FiberModel einstein(int k, double nu);

  int k() const { return k_; }
  FiberKind kind() const { return kind_; }
  double radius() const { return radius_; }
  /// nu with Ric_F = nu g_F.
  double ricci_constant() const;
  /// S_F = k nu.
  double scalar_curvature() const;

  struct Realization {
    GridPtr grid;
    MetricField metric;
  };
  /// Grid and metric of the fiber: T^k with period 2*pi when flat; nested colatitude charts
  /// times a longitude circle for spheres (and Einstein fibers with nu > 0, k >= 2).
  /// `points` gives the node count per fiber axis.
  Realization realize(const std::vector<int>& points) const;

 private:
  FiberModel(int k, FiberKind kind, double radius, double nu);
  int k_ = 0;
  FiberKind kind_ = FiberKind::flat;
  double radius_ = 1.0;
  double nu_ = 0.0;
};

}  // namespace bcwp::geometry

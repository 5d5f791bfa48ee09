#pragma once

#include "bcwp/metrics/specs.hpp"

#include <functional>
#include <vector>

namespace bcwp::metrics {

/// Grid and sign choices for the nested construction of
///   g = u(r)^{-2} dr^2 +- u(r)^2 dt^2 + r^2 g_F
/// in the variables s = r^2, y = t/2.
struct SchwarzschildOptions {
  double s_lo = 0.25;
  double s_hi = 4.0;
  int n_s = 16;
  int n_y = 8;
  double y_period = 1.0;
  int time_sign = 1;  ///< sign of the dt^2 term
  FiberModel fiber = FiberModel::flat(2);
  std::vector<int> fiber_points = {4, 4};
};

struct SchwarzschildNested {
  /// psi_1(s) = 2 s^{1/4} u(s^{1/2}), mu_1 = -1, over the base ds^2 with fiber +-dy^2.
  SbcwpSpec inner;
  FiberModel::Realization inner_fiber;
  /// psi_2(s,y) = s^{1/2}, mu_2 = -1/2, over the inner metric with fiber g_F.
  SbcwpSpec outer;
  FiberModel::Realization outer_fiber;
  MetricField assembled;
  /// Max over all points and components of |assembled, pulled back to (r,t) - direct metric|.
  double max_mismatch = 0.0;
};

/// `u_on_s_grid` holds u(s^{1/2}) at the nodes of the s axis.
SchwarzschildNested schwarzschild_nested(const std::vector<double>& u_on_s_grid, const SchwarzschildOptions& options);
SchwarzschildNested schwarzschild_nested(const std::function<double(double)>& u_of_r,
                                         const SchwarzschildOptions& options);

}  // namespace bcwp::metrics

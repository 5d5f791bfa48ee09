#pragma once

#include "bcwp/metrics/sbcwp.hpp"

#include <functional>
#include <vector>

namespace bcwp::metrics {

/// Scalar curvature of the assembled product by brute force (central differences).
ScalarField brute_force_scalar(const BcwpSpec& spec, const FiberModel::Realization& fiber);

/// Comparison points for refinement studies: colatitude coordinates inside [pi/4, 3pi/4] that are
/// nodes of the coarsest level, whose colatitude spacing is pi/coarse_intervals. Other axes are free.
bool comparison_point(const geometry::GridManifold& grid, std::size_t p, int coarse_intervals);

/// Max |brute force - closed form| per Ricci block of the product, over comparison points.
struct BlockErrors {
  double base_block = 0.0;
  double fiber_block = 0.0;
  double mixed_block = 0.0;
};
BlockErrors compare_ricci_blocks(const BcwpSpec& spec, const FiberModel::Realization& fiber,
                                 const RicciBlocks& closed, int coarse_intervals);

/// One refinement level of the three-way scalar comparison for a (psi,mu) spec.
struct OracleLevel {
  int n = 0;
  double reduced_vs_closed = 0.0;  ///< relative to max(|S|_inf, 1)
  double brute_force_error = 0.0;  ///< max |brute force - reduced| over comparison points
  double scale = 0.0;              ///< |S|_inf of the reduced form
};

struct OracleLadder {
  std::vector<OracleLevel> levels;
  std::vector<double> orders;
};

struct OracleCase {
  SbcwpSpec spec;
  FiberModel::Realization fiber;
};

/// Builds the case at refinement level n for every n in `ladder` and compares
/// (a) the reduced form, (b) the [c,w] closed form with (c,w) = (psi^mu, psi), (c) brute force.
/// Colatitude axes of level n are expected to have spacing pi/n.
OracleLadder scalar_oracle_ladder(const std::function<OracleCase(int)>& make_case, const std::vector<int>& ladder);

/// log2(e_coarse/e_fine) between consecutive levels.
std::vector<double> observed_orders(const std::vector<double>& errors);

}  // namespace bcwp::metrics

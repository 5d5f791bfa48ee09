#pragma once

#include "bcwp/cli/config.hpp"
#include "bcwp/elliptic/pbsc.hpp"
#include "bcwp/metrics/specs.hpp"

#include <optional>
#include <vector>

namespace bcwp::cli {

/// Base manifold of the `base` block. `first_axis_level`, when set, replaces the node count of
/// the first axis by a ladder level n: n nodes on a circle, n - 1 colatitudes (spacing pi/n) on a sphere.
metrics::BaseManifold build_base(const Json& config, std::optional<int> first_axis_level = std::nullopt);

geometry::FiberModel build_fiber(const Json& config);
/// Node counts of the fiber realization, same ladder convention as build_base.
std::vector<int> fiber_points(const Json& config, std::optional<int> first_axis_level = std::nullopt);

/// psi on the base grid; ConfigError naming `psi` if a sample is not positive.
geometry::ScalarField build_psi(const Json& config, const metrics::BaseManifold& base);

exponents::Rational config_rational(const Json& config, const std::string& path);
int config_fiber_sign(const Json& config, const std::string& path);

/// The equation solved by eigen / kappa / solve-sc / sweep: the `pde` block when enabled,
/// otherwise the one derived from (m, k, mu) and the fiber.
elliptic::PdeProblem build_problem(const Json& config, const metrics::BaseManifold& base, double lambda);

elliptic::SolveOptions build_solve_options(const Json& config);
elliptic::SweepOptions build_sweep_options(const Json& config);
/// from, from + step, ... up to `to` (inclusive within half a step); empty when to < from.
std::vector<double> sweep_grid(const Json& config);

}  // namespace bcwp::cli

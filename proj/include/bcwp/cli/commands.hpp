#pragma once

#include "bcwp/cli/report.hpp"

namespace bcwp::cli {

/// Dispatches on `command` of a resolved config. Adds wall-clock seconds when report_timing is set.
RunReport run_experiment(const Json& config);

/// Three-way scalar curvature comparison over the verify.ladder refinement levels.
RunReport run_verify(const Json& config);
RunReport run_classify(const Json& config);
/// p, q, varrho over an exact mu grid plus the zero crossings of q.
RunReport run_regime_series(const Json& config);
RunReport run_eigen(const Json& config);
RunReport run_kappa(const Json& config);
RunReport run_solve(const Json& config);
RunReport run_sweep(const Json& config);
RunReport run_schwarzschild(const Json& config);

/// Exit code for errors raised before or during a run.
inline constexpr int kErrorExit = 1;

}  // namespace bcwp::cli

#pragma once

#include "bcwp/geometry/calculus.hpp"

namespace bcwp::geometry {

/// Brute-force Ricci tensor
///   Ric_ij = d_l G^l_ij - d_i d_j log|g|^{1/2} + G^l_lm G^m_ij - G^l_jm G^m_il,
/// using G^l_il = d_i log|g|^{1/2}. Computed for i <= j and mirrored, so exactly symmetric.
TensorField2 ricci(const Calculus& calc);
TensorField2 ricci(const MetricField& metric, Scheme scheme = Scheme::central2);

ScalarField scalar_curvature(const Calculus& calc);
ScalarField scalar_curvature(const MetricField& metric, Scheme scheme = Scheme::central2);

}  // namespace bcwp::geometry

#pragma once

#include "bcwp/metrics/specs.hpp"

namespace bcwp::metrics {

/// Ricci tensor of a [c,w] metric, stored blockwise. The mixed block vanishes identically and
/// is not stored. On lifts of fiber fields Ric = Ric_F - X g_F with Ric_F = nu g_F.
struct RicciBlocks {
  TensorField2 base_block;
  ScalarField fiber_warp;  ///< X
  double fiber_nu = 0.0;

  /// nu - X, the multiple of g_F.
  ScalarField fiber_factor() const;
};

/// c^2 S = S_B + S_F c^2/w^2 - 2(m-1) Lap c/c - 2k Lap w/w - (m-4)(m-1)|grad c|^2/c^2
///         - 2k(m-2) <grad w, grad c>/(wc) - k(k-1)|grad w|^2/w^2
ScalarField scalar_bcwp_closed_form(const BcwpSpec& spec);

/// Base block  Ric_B - [(m-2) H^c/c + k H^w/w] + 2(m-2) dc dc/c^2 + k(dc dw + dw dc)/(wc)
///             - [(m-3)|grad c|^2/c^2 + Lap c/c + k <grad w, grad c>/(wc)] g_B,
/// fiber warp  X = (w^2/c^2)[(m-2) <grad w, grad c>/(wc) + Lap w/w + (k-1)|grad w|^2/w^2].
RicciBlocks ricci_bcwp_closed_form(const BcwpSpec& spec);

/// Full contraction c^{-2} tr_{g_B}(base block) + k w^{-2} (nu - X).
ScalarField scalar_from_blocks(const RicciBlocks& blocks, const BcwpSpec& spec);

}  // namespace bcwp::metrics

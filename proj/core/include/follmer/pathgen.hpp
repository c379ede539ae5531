#pragma once

#include <cstdint>

#include "follmer/path.hpp"

namespace follmer {

/// Fractional Brownian motion on [0,1] with Hurst parameter H, sampled on
/// the 2^L + 1 grid, via Davies-Harte circulant embedding of the increment
/// process (exact covariance). Deterministic given (H, L, seed). Negative
/// circulant eigenvalues (floating-point fringe at extreme H) are clipped
/// to zero and flagged in the label.
SamplePath gen_fbm(double H, int level, std::uint64_t seed);

/// Takagi-Landsberg function tau_H truncated at `depth` Faber-Schauder
/// levels, sampled on the 2^L + 1 grid. Requires depth <= L.
SamplePath gen_takagi_landsberg(double H, int depth, int level);

enum class DeterministicKind { Linear, Constant, Monomial };

/// Exact sampling of slope*t, the constant c, or t^q; `param` is the
/// slope, constant, or exponent respectively.
SamplePath gen_deterministic(DeterministicKind kind, double param, int level);

}  // namespace follmer

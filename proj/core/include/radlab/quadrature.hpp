#pragma once

#include <span>

namespace radlab {

/// Composite Simpson rule over an odd number (>= 3) of samples spaced `h` apart.
/// Throws BadGrid on even counts, fewer than three samples, or h <= 0.
double simpson(std::span<const double> samples, double h);

/// Composite Simpson rule over samples at the abscissae `grid`, which must be
/// uniformly spaced (relative tolerance 1e-9) with an odd count >= 3.
double simpson(std::span<const double> grid, std::span<const double> samples);

/// Richardson estimate of the Simpson error, (S_h - S_2h) / 15, from the same
/// samples. Needs a count of the form 4k + 1.
double simpson_error_estimate(std::span<const double> samples, double h);

}  // namespace radlab

#pragma once

#include "gpmood/dd.hpp"

namespace gpmood {

// Per-dimension factors of the cell-integrated squared-exponential kernel.
// All deltas are in units of the grid spacing of that dimension; sigma is
// the correlation length in the same units (ell / delta_d).

// Double integral of exp(-(x-y)^2 / (2 ell^2)) over two unit cells whose
// centers are `delta` apart, normalized by the cell widths.
dd cov_factor_1d(int delta, const dd& sigma);

// Single-cell integral of the kernel against a fixed evaluation point at
// distance `delta` from the cell center (erf difference form).
dd pred_factor_1d(const dd& delta, const dd& sigma);

// Second derivative of pred_factor_1d with respect to the evaluation
// point; ell is the correlation length in physical units (the factor
// carries 1/length^2).
dd second_derivative_factor_1d(const dd& delta, const dd& sigma, const dd& ell);

}  // namespace gpmood

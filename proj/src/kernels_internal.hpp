#pragma once

#include <cstddef>

namespace hlipgait::kernels::detail {

double binomial_coeff(int n, int k);

// Scalar Bezier grid, used by the vector path for tails and very high degrees.
void bezier_grid_reference(const double* ctrl, int degree, int channels, const double* s,
                           std::size_t n, double* out);

}  // namespace hlipgait::kernels::detail

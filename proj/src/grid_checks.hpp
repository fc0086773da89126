#pragma once

#include <vector>

#include "hlipgait/bezier.hpp"
#include "hlipgait/planar_models.hpp"
#include "hlipgait/report.hpp"

namespace hlipgait::detail {

struct ClearanceCheck {
  double violation = 0.0;  // max(0, threshold - Gamma) over interior points
  bool pass = true;
};

// Interior points need Gamma > 0; points at least `layer * T` away from both
// ends need Gamma > margin.
ClearanceCheck interior_clearance(const double* gamma, const std::vector<double>& t, double T,
                                  const VerifyTolerances& tol);

// Clearance along a grid (channel-major joint grid in, one value per point out).
std::vector<double> clearance_grid_x(const GridMatrix& q, const LinkParams& lp);
std::vector<double> clearance_grid_y(const GridMatrix& q, const LinkParams& lp);

struct ComGrid {
  std::vector<double> horizontal, z;
};
ComGrid com_grid_x(const GridMatrix& q, const LinkParams& lp);
ComGrid com_grid_y(const GridMatrix& q, const LinkParams& lp);

}  // namespace hlipgait::detail

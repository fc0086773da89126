#include "grid_checks.hpp"

#include <algorithm>

#include "hlipgait/kernels.hpp"

namespace hlipgait::detail {

ClearanceCheck interior_clearance(const double* gamma, const std::vector<double>& t, double T,
                                  const VerifyTolerances& tol) {
  ClearanceCheck out;
  const double lo = tol.layer * T, hi = (1.0 - tol.layer) * T;
  for (std::size_t k = 1; k + 1 < t.size(); ++k) {
    const double threshold = (t[k] >= lo && t[k] <= hi) ? tol.margin : 0.0;
    if (!(gamma[k] > threshold)) out.pass = false;
    out.violation = std::max(out.violation, threshold - gamma[k]);
  }
  return out;
}

std::vector<double> clearance_grid_x(const GridMatrix& q, const LinkParams& lp) {
  std::vector<double> out(q.cols());
  kernels::active().clearance_x(q.data(), out.size(), x_com_coeffs(lp), out.data());
  return out;
}

std::vector<double> clearance_grid_y(const GridMatrix& q, const LinkParams& lp) {
  std::vector<double> out(q.cols());
  kernels::active().clearance_y(q.data(), out.size(), y_com_coeffs(lp), out.data());
  return out;
}

ComGrid com_grid_x(const GridMatrix& q, const LinkParams& lp) {
  ComGrid g;
  g.horizontal.resize(q.cols());
  g.z.resize(q.cols());
  kernels::active().com_x(q.data(), q.cols(), x_com_coeffs(lp), g.horizontal.data(), g.z.data());
  return g;
}

ComGrid com_grid_y(const GridMatrix& q, const LinkParams& lp) {
  ComGrid g;
  g.horizontal.resize(q.cols());
  g.z.resize(q.cols());
  kernels::active().com_y(q.data(), q.cols(), y_com_coeffs(lp), g.horizontal.data(), g.z.data());
  return g;
}

}  // namespace hlipgait::detail

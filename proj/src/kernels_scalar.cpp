#include <cmath>
#include <vector>

#include "hlipgait/kernels.hpp"
#include "kernels_internal.hpp"

namespace hlipgait::kernels {

namespace {

void bezier_grid_scalar(const double* ctrl, int degree, int channels, const double* s,
                        std::size_t n, double* out) {
  std::vector<double> binom(degree + 1), sp(degree + 1), up(degree + 1);
  for (int j = 0; j <= degree; ++j) binom[j] = detail::binomial_coeff(degree, j);
  for (std::size_t k = 0; k < n; ++k) {
    const double t = s[k], u = 1.0 - t;
    sp[0] = up[0] = 1.0;
    for (int j = 1; j <= degree; ++j) {
      sp[j] = sp[j - 1] * t;
      up[j] = up[j - 1] * u;
    }
    for (int c = 0; c < channels; ++c) {
      const double* row = ctrl + c * (degree + 1);
      double acc = 0.0;
      for (int j = 0; j <= degree; ++j) acc += binom[j] * sp[j] * up[degree - j] * row[j];
      out[c * n + k] = acc;
    }
  }
}

void clearance_x_scalar(const double* q, std::size_t n, const XComCoeffs& c, double* out) {
  const double *q1 = q, *q2 = q + n, *q3 = q + 2 * n, *q4 = q + 3 * n;
  for (std::size_t k = 0; k < n; ++k) {
    out[k] = c.l1 * (std::cos(q1[k] + q2[k]) - std::cos(q3[k] + q4[k])) +
             c.l2 * (std::cos(q2[k]) - std::cos(q3[k]));
  }
}

void com_x_scalar(const double* q, std::size_t n, const XComCoeffs& c, double* ox,
                  double* oz) {
  const double *q1 = q, *q2 = q + n, *q3 = q + 2 * n, *q4 = q + 3 * n, *q5 = q + 4 * n;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = q1[k] + q2[k], b = q3[k] + q4[k];
    ox[k] = (c.a12 * std::sin(a) + c.a2 * std::sin(q2[k]) + c.a3 * std::sin(q3[k]) +
             c.a34 * std::sin(b) + c.a5 * std::sin(q5[k])) *
            c.inv_mass;
    oz[k] = (c.a12 * std::cos(a) + c.a2 * std::cos(q2[k]) + c.a3 * std::cos(q3[k]) +
             c.a34 * std::cos(b) + c.a5 * std::cos(q5[k])) *
            c.inv_mass;
  }
}

void clearance_y_scalar(const double* q, std::size_t n, const YComCoeffs& c, double* out) {
  const double *q1 = q, *q2 = q + n;
  for (std::size_t k = 0; k < n; ++k) out[k] = c.ly2 * std::cos(q2[k]) - c.ly1 * std::cos(q1[k]);
}

void com_y_scalar(const double* q, std::size_t n, const YComCoeffs& c, double* oy,
                  double* oz) {
  const double *q1 = q, *q2 = q + n, *q3 = q + 2 * n;
  for (std::size_t k = 0; k < n; ++k) {
    oy[k] = (c.b1 * std::sin(q1[k]) - c.b2 * std::sin(q2[k]) + c.b3 * std::sin(q3[k])) *
            c.inv_mass;
    oz[k] = (-c.b1 * std::cos(q1[k]) - c.b2 * std::cos(q2[k]) + c.b3 * std::cos(q3[k])) *
            c.inv_mass;
  }
}

void sincos_scalar(const double* x, std::size_t n, double* s, double* c) {
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = std::sin(x[k]);
    c[k] = std::cos(x[k]);
  }
}

}  // namespace

namespace detail {

double binomial_coeff(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

void bezier_grid_reference(const double* ctrl, int degree, int channels, const double* s,
                           std::size_t n, double* out) {
  bezier_grid_scalar(ctrl, degree, channels, s, n, out);
}

}  // namespace detail

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar",         bezier_grid_scalar, clearance_x_scalar,
                                 com_x_scalar,     clearance_y_scalar, com_y_scalar,
                                 sincos_scalar};
  return table;
}

}  // namespace hlipgait::kernels

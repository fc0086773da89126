#include "hlipgait/bezier.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "hlipgait/error.hpp"
#include "hlipgait/kernels.hpp"

namespace hlipgait {

namespace {

void check_time(double t, double duration) {
  if (!(t >= 0.0 && t <= duration)) {
    throw GaitError(ErrorCode::out_of_range,
                    "bezier: t = " + std::to_string(t) + " outside [0, duration]");
  }
}

}  // namespace

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Eigen::VectorXd bernstein_basis(int degree, double s) {
  Eigen::VectorXd b(degree + 1);
  const double u = 1.0 - s;
  for (int j = 0; j <= degree; ++j) {
    b(j) = binomial(degree, j) * std::pow(s, j) * std::pow(u, degree - j);
  }
  return b;
}

BezierCurve::BezierCurve(Eigen::MatrixXd control, double duration)
    : control_(std::move(control)), duration_(duration) {
  if (control_.cols() < 4) {
    throw GaitError(ErrorCode::invalid_argument, "bezier: degree must be at least 3");
  }
  if (control_.rows() < 1) throw GaitError(ErrorCode::invalid_argument, "bezier: no channels");
  if (!(duration_ > 0.0) || !std::isfinite(duration_)) {
    throw GaitError(ErrorCode::invalid_argument, "bezier: duration must be positive");
  }
}

Eigen::VectorXd BezierCurve::eval(double t) const {
  check_time(t, duration_);
  return control_ * bernstein_basis(degree(), t / duration_);
}

Eigen::VectorXd BezierCurve::derivative(double t) const {
  check_time(t, duration_);
  const int n = degree();
  const Eigen::MatrixXd diff =
      control_.rightCols(n) - control_.leftCols(n);  // alpha_{j+1} - alpha_j
  return diff * bernstein_basis(n - 1, t / duration_) * (n / duration_);
}

BezierCurve BezierCurve::hodograph() const {
  // Degree N-1 may sit below the constructor's floor of 3, so bypass it.
  const int n = degree();
  Eigen::MatrixXd diff = (control_.rightCols(n) - control_.leftCols(n)) * (n / duration_);
  BezierCurve h;
  h.control_ = std::move(diff);
  h.duration_ = duration_;
  return h;
}

BezierCurve BezierCurve::elevated(int new_degree) const {
  const int n = degree();
  if (new_degree < n) {
    throw GaitError(ErrorCode::invalid_argument, "bezier: cannot lower degree by elevation");
  }
  Eigen::MatrixXd p = control_;
  for (int m = n; m < new_degree; ++m) {
    Eigen::MatrixXd q(p.rows(), m + 2);
    q.col(0) = p.col(0);
    q.col(m + 1) = p.col(m);
    for (int j = 1; j <= m; ++j) {
      const double a = static_cast<double>(j) / (m + 1);
      q.col(j) = a * p.col(j - 1) + (1.0 - a) * p.col(j);
    }
    p = std::move(q);
  }
  return BezierCurve(std::move(p), duration_);
}

GridMatrix BezierCurve::eval_grid(const std::vector<double>& times) const {
  std::vector<double> s(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    check_time(times[k], duration_);
    s[k] = times[k] / duration_;
  }
  const GridMatrix ctrl = control_;
  GridMatrix out(channels(), static_cast<Eigen::Index>(times.size()));
  kernels::active().bezier_grid(ctrl.data(), degree(), channels(), s.data(), s.size(),
                                out.data());
  return out;
}

GridMatrix BezierCurve::derivative_grid(const std::vector<double>& times) const {
  const int n = degree();
  const Eigen::MatrixXd diff = (control_.rightCols(n) - control_.leftCols(n)) * (n / duration_);
  std::vector<double> s(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    check_time(times[k], duration_);
    s[k] = times[k] / duration_;
  }
  const GridMatrix ctrl = diff;
  GridMatrix out(channels(), static_cast<Eigen::Index>(times.size()));
  kernels::active().bezier_grid(ctrl.data(), n - 1, channels(), s.data(), s.size(), out.data());
  return out;
}

std::vector<double> uniform_grid(double duration, int n) {
  if (n < 2) throw GaitError(ErrorCode::invalid_argument, "grid needs at least 2 points");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = duration * k / (n - 1);
  t.back() = duration;
  return t;
}

FitResult fit_constrained(const std::vector<Sample>& samples, int degree, double duration,
                          const std::vector<Pin>& pinned) {
  if (degree < 3) throw GaitError(ErrorCode::invalid_argument, "fit: degree must be at least 3");
  const int ncoef = degree + 1;
  std::vector<double> fixed(ncoef, 0.0);
  std::vector<bool> is_pinned(ncoef, false);
  for (const Pin& p : pinned) {
    if (p.index < 0 || p.index > degree) {
      throw GaitError(ErrorCode::out_of_range, "fit: pinned index out of range");
    }
    is_pinned[p.index] = true;
    fixed[p.index] = p.value;
  }
  std::vector<int> free_idx;
  for (int j = 0; j < ncoef; ++j) {
    if (!is_pinned[j]) free_idx.push_back(j);
  }
  const int nfree = static_cast<int>(free_idx.size());
  const int ns = static_cast<int>(samples.size());
  if (ns < nfree) {
    throw GaitError(ErrorCode::invalid_argument,
                    "fit: underdetermined (" + std::to_string(ns) + " samples for " +
                        std::to_string(nfree) + " free control points)");
  }

  Eigen::MatrixXd a(ns, nfree);
  Eigen::VectorXd rhs(ns);
  for (int k = 0; k < ns; ++k) {
    check_time(samples[k].t, duration);
    if (!(samples[k].weight >= 0.0)) {
      throw GaitError(ErrorCode::invalid_argument, "fit: sample weights must be non-negative");
    }
    const double w = std::sqrt(samples[k].weight);
    const Eigen::VectorXd b = bernstein_basis(degree, samples[k].t / duration);
    double r = samples[k].value;
    for (int j = 0; j < ncoef; ++j) {
      if (is_pinned[j]) r -= b(j) * fixed[j];
    }
    rhs(k) = w * r;
    for (int f = 0; f < nfree; ++f) a(k, f) = w * b(free_idx[f]);
  }

  FitResult result;
  Eigen::VectorXd x(nfree);
  if (nfree > 0) {
    const Eigen::MatrixXd gram = a.transpose() * a;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    // rcond() alone misses exact zero pivots, so check the pivot spread too.
    const Eigen::VectorXd d = ldlt.vectorD();
    const bool well_posed = ldlt.info() == Eigen::Success && ldlt.isPositive() &&
                            d.minCoeff() > 1e-12 * d.maxCoeff() && ldlt.rcond() > 1e-12;
    if (well_posed) {
      x = ldlt.solve(a.transpose() * rhs);
    } else {
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
      if (qr.rank() < nfree) {
        throw GaitError(ErrorCode::singular, "fit: rank-deficient sample set");
      }
      x = qr.solve(rhs);
      result.used_fallback = true;
    }
  }

  Eigen::MatrixXd ctrl(1, ncoef);
  for (int j = 0; j < ncoef; ++j) ctrl(0, j) = fixed[j];
  for (int f = 0; f < nfree; ++f) ctrl(0, free_idx[f]) = x(f);
  const Eigen::VectorXd resid = (nfree > 0 ? Eigen::VectorXd(a * x - rhs) : Eigen::VectorXd(-rhs));
  result.rms = ns > 0 ? std::sqrt(resid.squaredNorm() / ns) : 0.0;  // weighted
  result.curve = BezierCurve(std::move(ctrl), duration);
  return result;
}

}  // namespace hlipgait

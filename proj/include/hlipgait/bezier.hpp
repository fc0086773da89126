#pragma once

#include <vector>

#include <Eigen/Core>

namespace hlipgait {

// Channel-major grid: row c holds channel c at every grid time.
using GridMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Multi-channel Bezier curve on [0, duration]. Row c of `control` holds the
// N+1 control values of channel c; column j is alpha_j.
class BezierCurve {
 public:
  BezierCurve() = default;
  BezierCurve(Eigen::MatrixXd control, double duration);

  int degree() const { return static_cast<int>(control_.cols()) - 1; }
  int channels() const { return static_cast<int>(control_.rows()); }
  double duration() const { return duration_; }
  const Eigen::MatrixXd& control() const { return control_; }

  Eigen::VectorXd eval(double t) const;
  Eigen::VectorXd derivative(double t) const;

  // Grid evaluation through the dispatched kernels.
  GridMatrix eval_grid(const std::vector<double>& times) const;
  GridMatrix derivative_grid(const std::vector<double>& times) const;

  BezierCurve hodograph() const;  // derivative curve, degree N-1
  BezierCurve elevated(int new_degree) const;

 private:
  Eigen::MatrixXd control_;
  double duration_ = 1.0;
};

double binomial(int n, int k);

// Bernstein basis values B_{j,N}(t/duration), j = 0..N.
Eigen::VectorXd bernstein_basis(int degree, double s);

struct Pin {
  int index;
  double value;
};

struct Sample {
  double t;
  double value;
  double weight = 1.0;  // least-squares row weight, must be >= 0
};

struct FitResult {
  BezierCurve curve;  // single channel
  double rms = 0.0;
  bool used_fallback = false;  // rank-revealing QR instead of normal equations
};

FitResult fit_constrained(const std::vector<Sample>& samples, int degree, double duration,
                          const std::vector<Pin>& pinned);

// n-point uniform grid on [0, duration] including both endpoints.
std::vector<double> uniform_grid(double duration, int n);

}  // namespace hlipgait

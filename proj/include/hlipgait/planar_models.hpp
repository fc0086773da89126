#pragma once

#include <string>

#include <Eigen/Core>

namespace hlipgait {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec3 = Eigen::Matrix<double, 3, 1>;
using Mat25 = Eigen::Matrix<double, 2, 5>;
using Mat23 = Eigen::Matrix<double, 2, 3>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

// Robot parameters. Defaults reproduce the reference humanoid:
// shank m1, thigh m2, torso m3, CoM offsets at half link length.
struct LinkParams {
  double m1 = 6.759;
  double m2 = 3.0426;
  double m3 = 15.04579;
  double lx1 = 0.3538;
  double lx2 = 0.367;
  double lx3 = 0.65;
  // X-model link order is (shank, thigh, thigh, shank, torso).
  double rx[5] = {0.1769, 0.1835, 0.1835, 0.1769, 0.325};
  double ry[3] = {0.3604, 0.3604, 0.325};
  double ly1 = 0.7208;
  double ly2 = 0.7208;
  double g = 9.81;

  double total_mass() const { return 2.0 * m1 + 2.0 * m2 + m3; }
  double leg_mass() const { return m1 + m2; }
  void validate() const;
};

// Reads "key = value" lines ('#' starts a comment). Unknown keys are an error.
// Keys: m1 m2 m3 lx1 lx2 lx3 rx1..rx5 ry1..ry3 ly1 ly2 g.
LinkParams load_link_params(const std::string& path);

// Params file named by --params, falling back to $HLIPGAIT_PARAMS, then defaults.
LinkParams resolve_link_params(const std::string& cli_path);

// Matrix R swapping stance and swing roles: (q1..q5) -> (q4, q3, q2, q1, q5).
Mat5 swap_matrix();
Vec5 swap(const Vec5& q);

struct Com {
  double horizontal = 0.0;  // x_com or y_com
  double z = 0.0;
};

// X-model (sagittal, 5 links, stance foot at origin).
Com com_x(const Vec5& q, const LinkParams& lp);
Mat25 com_jacobian_x(const Vec5& q, const LinkParams& lp);
double clearance_x(const Vec5& q, const LinkParams& lp);
double swing_foot_x(const Vec5& q, const LinkParams& lp);  // H^x
double step_length_x(const Vec5& q0, const Vec5& qT, const LinkParams& lp);
// Product form of the clearance condition, equal to -clearance_x / 2.
double clearance_x_eform(const Vec5& q, const LinkParams& lp);

struct LegLengths {
  double ly1 = 0.0;
  double ly2 = 0.0;
};

LegLengths y_leg_lengths(const Vec5& x_initial, const LinkParams& lp);
// Copy of lp with Y leg lengths set and leg CoM offsets moved to half length.
LinkParams with_y_legs(const LinkParams& lp, const LegLengths& legs);

// Y-model (frontal, 3 links, angles measured so that pi is a vertical leg).
Com com_y(const Vec3& q, const LinkParams& lp);
Mat23 com_jacobian_y(const Vec3& q, const LinkParams& lp);
double clearance_y(const Vec3& q, const LinkParams& lp);
double step_length_y(const Vec3& qT, const LinkParams& lp);

// Expanded trig coefficients of the CoM sums, shared by the grid kernels.
//   x M = a12 sin(q1+q2) + a2 sin q2 + a3 sin q3 + a34 sin(q3+q4) + a5 sin q5
//   z M = same with cos
struct XComCoeffs {
  double a12, a2, a3, a34, a5, inv_mass, l1, l2;
};
//   y M = b1 sin q1 - b2 sin q2 + b3 sin q3
//   z M = -b1 cos q1 - b2 cos q2 + b3 cos q3
struct YComCoeffs {
  double b1, b2, b3, inv_mass, ly1, ly2;
};

XComCoeffs x_com_coeffs(const LinkParams& lp);
YComCoeffs y_com_coeffs(const LinkParams& lp);

}  // namespace hlipgait

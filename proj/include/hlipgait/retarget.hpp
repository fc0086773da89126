#pragma once

#include <array>
#include <vector>

#include <Eigen/Core>

#include "hlipgait/bezier.hpp"
#include "hlipgait/planar_models.hpp"
#include "hlipgait/planner.hpp"

namespace hlipgait {

enum class Stance { left, right };

Stance opposite(Stance s);
const char* to_string(Stance s);
Stance parse_stance(const std::string& s);

using JointVector12 = Eigen::Matrix<double, 12, 1>;

// Order of JointVector12 entries.
extern const std::array<const char*, 12> kJointNames;

// Linear joint map. Y leg angles enter relative to vertical (q - pi), so the
// upright pose qx = 0, qy = (pi, pi, 0) maps to all zeros. Left stance swaps
// X-model roles through R and swaps the Y leg indices.
JointVector12 map_config(const Vec5& qx, const Vec3& qy, Stance stance);
// Same map for rates (no vertical offset).
JointVector12 map_rates(const Vec5& dqx, const Vec3& dqy, Stance stance);

// Exchange left and right entries of a joint vector.
JointVector12 mirror_joints(const JointVector12& q);

struct GaitSample {
  double t = 0.0;
  JointVector12 q;
  JointVector12 dq;
};

// One gait cycle of two steps. The second step replays the X plan with the
// legs exchanged; for the Y plan it runs the first step backward in time,
// with the legs exchanged and mirrored about vertical.
class RobotGait {
 public:
  RobotGait() = default;
  RobotGait(BezierCurve x, BezierCurve y, Stance stance_first);

  double duration() const { return 2.0 * t_ssp_; }
  double t_ssp() const { return t_ssp_; }
  Stance stance_first() const { return stance_first_; }
  const BezierCurve& x_curve() const { return x_; }
  const BezierCurve& y_curve() const { return y_; }

  // Periodic in t.
  GaitSample at(double t) const;

  // Model coordinates during the given half (0 or 1) at local time tau.
  void model_state(int half, double tau, Vec5& qx, Vec5& dqx, Vec3& qy, Vec3& dqy) const;

 private:
  BezierCurve x_, y_;
  double t_ssp_ = 0.0;
  Stance stance_first_ = Stance::right;
};

RobotGait assemble_gait(const PlanX& plan_x, const PlanY& plan_y,
                        Stance stance_first = Stance::right);

// Uniform samples t = k dt from 0 through cycles * duration.
std::vector<GaitSample> sample(const RobotGait& gait, double dt, int cycles = 1);

}  // namespace hlipgait

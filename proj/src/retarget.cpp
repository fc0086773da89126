#include "hlipgait/retarget.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hlipgait/error.hpp"

namespace hlipgait {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Right-stance map for already-relabelled model coordinates: X stance leg is
// (q1, q2), Y stance leg is q2. Y legs arrive relative to vertical.
JointVector12 table_map(const Vec5& x, double y1, double y2, double y3) {
  JointVector12 j;
  j << -x(2) - x(3),  // L-aky
      -x(3),          // L-kny
      x(2) + x(4),    // L-hpy
      -x(0) - x(1),   // R-aky
      -x(0),          // R-kny
      x(1) + x(4),    // R-hpy
      y1,             // L-akx
      y1 - y3,        // L-hpx
      y2,             // R-akx
      y2 - y3,        // R-hpx
      0.0,            // L-hpz
      0.0;            // R-hpz
  return j;
}

}  // namespace

const std::array<const char*, 12> kJointNames = {"L-aky", "L-kny", "L-hpy", "R-aky",
                                                 "R-kny", "R-hpy", "L-akx", "L-hpx",
                                                 "R-akx", "R-hpx", "L-hpz", "R-hpz"};

Stance opposite(Stance s) { return s == Stance::left ? Stance::right : Stance::left; }

const char* to_string(Stance s) { return s == Stance::left ? "left" : "right"; }

Stance parse_stance(const std::string& s) {
  if (s == "left") return Stance::left;
  if (s == "right") return Stance::right;
  throw GaitError(ErrorCode::invalid_argument, "stance must be 'left' or 'right', got '" + s + "'");
}

JointVector12 map_config(const Vec5& qx, const Vec3& qy, Stance stance) {
  if (stance == Stance::right) return table_map(qx, qy(0) - kPi, qy(1) - kPi, qy(2));
  return table_map(swap(qx), qy(1) - kPi, qy(0) - kPi, qy(2));
}

JointVector12 map_rates(const Vec5& dqx, const Vec3& dqy, Stance stance) {
  if (stance == Stance::right) return table_map(dqx, dqy(0), dqy(1), dqy(2));
  return table_map(swap(dqx), dqy(1), dqy(0), dqy(2));
}

JointVector12 mirror_joints(const JointVector12& q) {
  JointVector12 m = q;
  const int pairs[6][2] = {{0, 3}, {1, 4}, {2, 5}, {6, 8}, {7, 9}, {10, 11}};
  for (const auto& p : pairs) std::swap(m(p[0]), m(p[1]));
  return m;
}

RobotGait::RobotGait(BezierCurve x, BezierCurve y, Stance stance_first)
    : x_(std::move(x)), y_(std::move(y)), t_ssp_(x_.duration()), stance_first_(stance_first) {
  if (x_.channels() != 5 || y_.channels() != 3) {
    throw GaitError(ErrorCode::invalid_argument, "gait needs a 5-channel X and 3-channel Y curve");
  }
  if (std::abs(x_.duration() - y_.duration()) > 1e-12 * x_.duration()) {
    throw GaitError(ErrorCode::invalid_argument, "X and Y plans have different step periods");
  }
}

void RobotGait::model_state(int half, double tau, Vec5& qx, Vec5& dqx, Vec3& qy,
                            Vec3& dqy) const {
  tau = std::min(std::max(tau, 0.0), t_ssp_);
  qx = x_.eval(tau);
  dqx = x_.derivative(tau);
  if (half == 0) {
    qy = y_.eval(tau);
    dqy = y_.derivative(tau);
    return;
  }
  const double back = std::max(t_ssp_ - tau, 0.0);
  const Vec3 p = y_.eval(back), dp = y_.derivative(back);
  qy << 2.0 * kPi - p(0), 2.0 * kPi - p(1), p(2);
  dqy << dp(0), dp(1), -dp(2);
}

GaitSample RobotGait::at(double t) const {
  const double period = duration();
  double u = t;
  if (t < 0.0 || t > period) {
    u = std::fmod(t, period);
    if (u < 0.0) u += period;
    if (u == 0.0 && t > 0.0) u = period;
  }
  const int half = u <= t_ssp_ ? 0 : 1;
  const double tau = half == 0 ? u : u - t_ssp_;
  const Stance stance = half == 0 ? stance_first_ : opposite(stance_first_);
  Vec5 qx, dqx;
  Vec3 qy, dqy;
  model_state(half, tau, qx, dqx, qy, dqy);
  return {t, map_config(qx, qy, stance), map_rates(dqx, dqy, stance)};
}

RobotGait assemble_gait(const PlanX& plan_x, const PlanY& plan_y, Stance stance_first) {
  const double tx = plan_x.curve.duration(), ty = plan_y.curve.duration();
  if (std::abs(tx - ty) > 1e-12 * tx) {
    throw GaitError(ErrorCode::invalid_argument, "plans disagree on t_ssp");
  }
  if (std::abs(plan_x.z0 - plan_y.z0) > 1e-12) {
    throw GaitError(ErrorCode::invalid_argument, "plans disagree on z0");
  }
  return RobotGait(plan_x.curve, plan_y.curve, stance_first);
}

std::vector<GaitSample> sample(const RobotGait& gait, double dt, int cycles) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw GaitError(ErrorCode::invalid_argument, "dt must be positive");
  }
  if (cycles < 1) throw GaitError(ErrorCode::invalid_argument, "cycles must be at least 1");
  const double total = gait.duration() * cycles;
  const double ratio = total / dt;
  const double nearest = std::round(ratio);
  const long steps = static_cast<long>(std::abs(ratio - nearest) < 1e-9 * std::max(1.0, ratio)
                                           ? nearest
                                           : std::floor(ratio));
  std::vector<GaitSample> out;
  out.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) {
    const double t = k == steps && std::abs(ratio - nearest) < 1e-9 * std::max(1.0, ratio)
                         ? total
                         : k * dt;
    out.push_back(gait.at(t));
  }
  return out;
}

}  // namespace hlipgait

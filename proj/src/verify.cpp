#include "hlipgait/verify.hpp"

#include <algorithm>
#include <cmath>

#include "grid_checks.hpp"

namespace hlipgait {

bool VerifyReport::pass() const {
  return !properties.empty() &&
         std::all_of(properties.begin(), properties.end(), [](const auto& p) { return p.pass; });
}

const PropertyCheck* VerifyReport::find(const std::string& name) const {
  for (const auto& p : properties) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::string VerifyReport::failures() const {
  std::string out;
  for (const auto& p : properties) {
    if (p.pass) continue;
    if (!out.empty()) out += ", ";
    out += p.name;
  }
  return out;
}

namespace {

PropertyCheck bounded(std::string name, double violation, double tol) {
  return {std::move(name), violation, tol, std::isfinite(violation) && violation <= tol};
}

double max_height_error(const std::vector<double>& z, double z0) {
  double worst = 0.0;
  for (double v : z) worst = std::max(worst, std::abs(v - z0));
  return worst;
}

}  // namespace

VerifyReport verify_x(const PlanX& plan, const LinkParams& lp, const HlipParams& hlip, int grid,
                      const VerifyTolerances& tol) {
  const BezierCurve& c = plan.curve;
  const double T = c.duration();
  const Vec5 q0 = c.eval(0.0), qT = c.eval(T);
  const Vec5 dq0 = c.derivative(0.0), dqT = c.derivative(T);
  VerifyReport r;
  r.grid = grid;

  r.properties.push_back(
      bounded("P1_position_swap", (q0 - swap(qT)).cwiseAbs().maxCoeff(), tol.boundary));
  r.properties.push_back(
      bounded("P1_velocity_swap", (dq0 - swap(dqT)).cwiseAbs().maxCoeff(), tol.boundary));
  r.properties.push_back(bounded(
      "P2_endpoint_contact",
      std::max(std::abs(clearance_x(q0, lp)), std::abs(clearance_x(qT, lp))), tol.boundary));

  const std::vector<double> times = uniform_grid(T, grid);
  const GridMatrix q = c.eval_grid(times);
  const std::vector<double> gamma = detail::clearance_grid_x(q, lp);
  const detail::ClearanceCheck cc = detail::interior_clearance(gamma.data(), times, T, tol);
  r.properties.push_back({"P3_interior_clearance", cc.violation, 0.0, cc.pass});

  const StepCoeffs sc = step_coeffs(hlip);
  const Eigen::Vector2d lhs = com_jacobian_x(qT, lp) * dqT;
  const Eigen::Vector2d rhs((plan.step_length - sc.t1 * com_x(qT, lp).horizontal) / sc.t2, 0.0);
  r.properties.push_back(
      bounded("P4_end_com_velocity", (lhs - rhs).cwiseAbs().maxCoeff(), tol.kcond));

  r.properties.push_back(
      bounded("P5_com_height", max_height_error(detail::com_grid_x(q, lp).z, hlip.z0), tol.height));

  r.properties.push_back(bounded(
      "step_length", std::abs(step_length_x(q0, qT, lp) - plan.step_length), tol.boundary));
  return r;
}

VerifyReport verify_y(const PlanY& plan, const LinkParams& lp_in, const HlipParams& hlip,
                      int grid, const VerifyTolerances& tol) {
  const LinkParams lp = with_y_legs(lp_in, plan.legs);
  const BezierCurve& c = plan.curve;
  const double T = c.duration();
  const Vec3 q0 = c.eval(0.0), qT = c.eval(T);
  const Vec3 dqT = c.derivative(T);
  VerifyReport r;
  r.grid = grid;

  r.properties.push_back(bounded("P1_start_legs_equal", std::abs(q0(0) - q0(1)), tol.boundary));
  r.properties.push_back(
      bounded("P1_end_leg_rates_equal", std::abs(dqT(0) - dqT(1)), tol.boundary));
  r.properties.push_back(bounded(
      "P2_endpoint_contact",
      std::max(std::abs(clearance_y(q0, lp)), std::abs(clearance_y(qT, lp))), tol.boundary));

  const std::vector<double> times = uniform_grid(T, grid);
  const GridMatrix q = c.eval_grid(times);
  const std::vector<double> gamma = detail::clearance_grid_y(q, lp);
  const detail::ClearanceCheck cc = detail::interior_clearance(gamma.data(), times, T, tol);
  r.properties.push_back({"P3_interior_clearance", cc.violation, 0.0, cc.pass});

  const StepCoeffs sc = step_coeffs(hlip);
  const Eigen::Vector2d lhs = com_jacobian_y(qT, lp) * dqT;
  const Eigen::Vector2d rhs(
      (plan.step_length - sc.t1 * com_y(qT, lp).horizontal) / (2.0 * sc.t2), 0.0);
  r.properties.push_back(
      bounded("P4_end_com_velocity", (lhs - rhs).cwiseAbs().maxCoeff(), tol.kcond));

  r.properties.push_back(
      bounded("P5_com_height", max_height_error(detail::com_grid_y(q, lp).z, hlip.z0), tol.height));

  r.properties.push_back(
      bounded("step_length", std::abs(step_length_y(qT, lp) - plan.step_length), tol.boundary));
  return r;
}

Deviation hlip_consistency(const std::function<ComSample(double)>& com, const HlipParams& hlip,
                           int grid) {
  const std::vector<double> times = uniform_grid(hlip.t_ssp, grid);
  const ComSample start = com(0.0);
  const HlipState s0{start.p, start.v};
  Deviation d;
  for (double t : times) {
    const ComSample c = com(t);
    const HlipState f = ssp_flow_any(s0, hlip, t);
    d.position = std::max(d.position, std::abs(c.p - f.p));
    d.velocity = std::max(d.velocity, std::abs(c.v - f.v));
  }
  return d;
}

Deviation hlip_consistency(const PlanX& plan, const LinkParams& lp, const HlipParams& hlip,
                           int grid) {
  return hlip_consistency(
      [&](double t) {
        const Vec5 q = plan.curve.eval(t);
        const Vec5 dq = plan.curve.derivative(t);
        return ComSample{com_x(q, lp).horizontal, (com_jacobian_x(q, lp) * dq)(0)};
      },
      hlip, grid);
}

Deviation hlip_consistency(const PlanY& plan, const LinkParams& lp_in, const HlipParams& hlip,
                           int grid) {
  const LinkParams lp = with_y_legs(lp_in, plan.legs);
  return hlip_consistency(
      [&](double t) {
        const Vec3 q = plan.curve.eval(t);
        const Vec3 dq = plan.curve.derivative(t);
        return ComSample{com_y(q, lp).horizontal, (com_jacobian_y(q, lp) * dq)(0)};
      },
      hlip, grid);
}

}  // namespace hlipgait

#include "hlipgait/planner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include <Eigen/LU>

#include "grid_checks.hpp"
#include "hlipgait/error.hpp"
#include "hlipgait/hlip.hpp"
#include "hlipgait/verify.hpp"

namespace hlipgait {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Tracks the failure that got furthest through the pipeline, for diagnostics.
struct BestFailure {
  int stage = -1;
  double metric = std::numeric_limits<double>::infinity();
  std::string message = "no samples evaluated";

  void offer(int s, double m, const std::string& msg) {
    if (s > stage || (s == stage && m < metric)) {
      stage = s;
      metric = m;
      message = msg;
    }
  }
};

enum Stage { kBoundary = 0, kGate = 1, kHeight = 2, kVerify = 3 };

double report_excess(const VerifyReport& r) {
  double worst = 0.0;
  for (const auto& p : r.properties) {
    if (!p.pass) worst = std::max(worst, p.max_violation - p.tolerance);
  }
  return worst;
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Refit failures rank by their residual; domain failures rank below any refit.
double height_metric(const GaitError& e) {
  if (e.code() != ErrorCode::infeasible) return std::numeric_limits<double>::max();
  const std::string msg = e.what();
  const auto pos = msg.find("deviation ");
  return pos == std::string::npos ? 0.0 : std::atof(msg.c_str() + pos + 10);
}

int torso_channel(Model m) { return m == Model::X ? 4 : 2; }

// Height of the non-torso links times total mass, and the torso coefficient,
// so that z M = legs + coeff cos(torso).
void torso_split(const GridMatrix& q, const LinkParams& lp, Model model, std::vector<double>& legs,
                 double& coeff) {
  GridMatrix zeroed = q;
  zeroed.row(torso_channel(model)).setZero();
  const double mass = lp.total_mass();
  std::vector<double> z;
  if (model == Model::X) {
    z = detail::com_grid_x(zeroed, lp).z;
    coeff = x_com_coeffs(lp).a5;
  } else {
    z = detail::com_grid_y(zeroed, lp).z;
    coeff = y_com_coeffs(lp).b3;
  }
  legs.resize(z.size());
  for (std::size_t k = 0; k < z.size(); ++k) legs[k] = z[k] * mass - coeff;
}

}  // namespace

// ---- seeds and timing -----------------------------------------------------------

SeedsX SeedsX::nominal() {
  SeedsX s = reference();
  // The published interior swing knee (2.4 rad) leaves the single free torso control
  // point unable to hold the CoM height at reachable z0; a shallower swing works.
  s.polygon.col(2) << 0.0, -0.043, -0.4, 1.0;
  return s;
}

SeedsX SeedsX::reference() {
  SeedsX s;
  s.polygon << 0.1, 0.084, 0.0, 0.1, 0.1,     //
      -0.175, -0.175, -0.043, 0.088, 0.088,   //
      0.088, 0.088, -0.82, -0.174, -0.174,    //
      0.1, 0.1, 2.4, 0.0835, 0.1;
  return s;
}

SeedsY SeedsY::nominal() {
  SeedsY s;
  // Offsets from the straight line (pi, pi) -> beta_M; the swing leg (row 2)
  // is pushed outward mid-step to lift the foot.
  s.polygon << 0.0, 0.0, 0.05, 0.0, 0.0,  //
      0.0, 0.0, -0.15, 0.0, 0.0;
  s.relative = true;
  return s;
}

SeedsY SeedsY::reference() {
  SeedsY s;
  s.polygon << 3.14, 3.14, 3.14, 3.31, 3.30,  //
      3.14, 3.14, 2.512, 2.97, 2.97;
  s.relative = false;
  return s;
}

StepTiming resolve_timing(const GaitRequestX& req) {
  StepTiming st;
  st.t_ssp = req.t_ssp;
  if (req.step_length && req.walking_speed && *req.walking_speed != 0.0) {
    st.step_length = *req.step_length;
    st.t_ssp = *req.step_length / *req.walking_speed;
    if (!(st.t_ssp > 0.0)) {
      throw GaitError(ErrorCode::invalid_argument,
                      "step length and walking speed must share sign (t_ssp = L / V)");
    }
  } else if (req.step_length) {
    if (req.walking_speed && *req.step_length != 0.0) {
      throw GaitError(ErrorCode::invalid_argument, "zero walking speed with nonzero step length");
    }
    st.step_length = *req.step_length;
  } else if (req.walking_speed) {
    st.step_length = *req.walking_speed * req.t_ssp;
  }
  if (!(st.t_ssp > 0.0) || !std::isfinite(st.t_ssp) || !std::isfinite(st.step_length)) {
    throw GaitError(ErrorCode::invalid_argument, "t_ssp must be positive and finite");
  }
  return st;
}

// ---- X boundary -----------------------------------------------------------------

namespace {

// Root of l1 sin(a + s) + l2 sin(s) = 0 on [-pi/2, pi/2].
double contact_root(double a, const LinkParams& lp) {
  auto f = [&](double s) { return lp.lx1 * std::sin(a + s) + lp.lx2 * std::sin(s); };
  double lo = -0.5 * kPi, hi = 0.5 * kPi;
  double flo = f(lo);
  if (flo * f(hi) > 0.0) {
    throw GaitError(ErrorCode::no_convergence, "contact root not bracketed");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  if (hi - lo > 1e-12) throw GaitError(ErrorCode::no_convergence, "contact root bisection");
  return 0.5 * (lo + hi);
}

}  // namespace

double x_reach(double knee0, const LinkParams& lp) {
  const double s = contact_root(knee0, lp);
  return 2.0 * std::abs(lp.lx1 * std::cos(knee0 + s) + lp.lx2 * std::cos(s));
}

double step_length_lemma(double knee0, double contact_mid, double half_split,
                         const LinkParams& lp) {
  // sin(s) in the denominator; callers keep away from s = 0.
  return -2.0 * lp.lx1 * std::sin(knee0) * std::sin(half_split) / std::sin(contact_mid);
}

BoundaryX solve_boundary_x(const GaitRequestX& req, const LinkParams& lp, const FreeX& free) {
  const StepTiming st = resolve_timing(req);
  const int n = req.degree;
  if (n < 3) throw GaitError(ErrorCode::invalid_argument, "degree must be at least 3");
  const double a = free.knee0;
  if (!(std::abs(a) < 0.5 * kPi)) {
    throw GaitError(ErrorCode::invalid_argument, "alpha^1_0 must lie in (-pi/2, pi/2)");
  }
  const double L = st.step_length;

  BoundaryX b;
  const double s = contact_root(a, lp);
  const double reach_half = lp.lx1 * std::cos(a + s) + lp.lx2 * std::cos(s);
  if (std::abs(L) > 2.0 * std::abs(reach_half)) {
    throw GaitError(ErrorCode::out_of_range,
                    "step length " + fmt(L) + " m exceeds kinematic reach " +
                        fmt(2.0 * std::abs(reach_half)) + " m");
  }
  const double d = std::asin(L / (2.0 * reach_half));
  b.contact_mid = s;
  b.half_split = d;

  b.a_end << a, s + d, s - d, a, 0.0;
  b.a0 << a, s - d, s + d, a, 0.0;

  // Torso angle from z_com(alpha_0) = z0.
  const XComCoeffs k = x_com_coeffs(lp);
  const double mass = lp.total_mass();
  const double legs = k.a12 * std::cos(b.a0(0) + b.a0(1)) + k.a2 * std::cos(b.a0(1)) +
                      k.a3 * std::cos(b.a0(2)) + k.a34 * std::cos(b.a0(2) + b.a0(3));
  const double arg = (req.z0 * mass - legs) / k.a5;
  if (!(std::abs(arg) <= 1.0)) {
    throw GaitError(ErrorCode::domain,
                    "CoM height unreachable: z0 = " + fmt(req.z0) + " m needs cos(alpha^5_0) = " +
                        fmt(arg) + "; reachable z0 in [" + fmt((legs - k.a5) / mass) + ", " +
                        fmt((legs + k.a5) / mass) + "] m for this pose");
  }
  const double torso = (free.torso_sign >= 0 ? 1.0 : -1.0) * std::acos(arg);
  b.a0(4) = torso;
  b.a_end(4) = torso;

  // End-of-step CoM velocity: K_x(alpha_N) (alpha_N - alpha_{N-1}) = T/(N T2) [L - T1 x; 0],
  // solved for the last two components of the difference.
  HlipParams hp{req.z0, lp.g, st.t_ssp};
  const StepCoeffs sc = step_coeffs(hp);
  const Mat25 kx = com_jacobian_x(b.a_end, lp);
  const double x_end = com_x(b.a_end, lp).horizontal;
  Vec5 delta;
  delta.head<3>() = b.a_end.head<3>() - free.end_prev;
  Eigen::Vector2d rhs(st.t_ssp / (n * sc.t2) * (L - sc.t1 * x_end), 0.0);
  rhs -= kx.leftCols<3>() * delta.head<3>();
  const Eigen::Matrix2d m2 = kx.rightCols<2>();
  const double det = m2.determinant();
  if (std::abs(det) < 1e-12) {
    throw GaitError(ErrorCode::singular, "end-velocity system singular (det = " + fmt(det) + ")");
  }
  delta.tail<2>() = m2.inverse() * rhs;

  b.a_prev = b.a_end - delta;
  b.a1 = b.a0 + swap(delta);
  return b;
}

// ---- Y boundary -----------------------------------------------------------------

BoundaryY solve_boundary_y(const GaitRequestY& req, const LinkParams& lp, const FreeY& free) {
  const int m = req.degree;
  if (m < 3) throw GaitError(ErrorCode::invalid_argument, "degree must be at least 3");
  if (!(req.t_ssp > 0.0)) throw GaitError(ErrorCode::invalid_argument, "t_ssp must be positive");
  const double L = req.walking_speed * req.t_ssp;
  if (!(std::abs(L) <= 2.0 * lp.ly1)) {
    throw GaitError(ErrorCode::out_of_range, "lateral step " + fmt(L) + " m exceeds 2 ly1 = " +
                                                 fmt(2.0 * lp.ly1) + " m");
  }
  const double b1 = kPi + std::asin(L / (2.0 * lp.ly1));
  const double b2 = 2.0 * kPi - b1;

  const YComCoeffs k = y_com_coeffs(lp);
  const double mass = lp.total_mass();
  const double sign = free.torso_sign >= 0 ? 1.0 : -1.0;
  auto torso_for = [&](double q1, double q2, const char* where) {
    const double arg = (req.z0 * mass + k.b1 * std::cos(q1) + k.b2 * std::cos(q2)) / k.b3;
    if (!(std::abs(arg) <= 1.0)) {
      throw GaitError(ErrorCode::domain,
                      std::string("CoM height unreachable at ") + where + ": z0 = " +
                          fmt(req.z0) + " m needs cos(torso) = " + fmt(arg));
    }
    return sign * std::acos(arg);
  };

  BoundaryY b;
  b.b_end << b1, b2, torso_for(b1, b2, "step end");
  const double t0 = torso_for(kPi, kPi, "step start");
  b.b0 << kPi, kPi, t0;
  b.b1 << free.legs_start, free.legs_start, t0;

  HlipParams hp{req.z0, lp.g, req.t_ssp};
  const StepCoeffs sc = step_coeffs(hp);
  const Mat23 ky = com_jacobian_y(b.b_end, lp);
  const double y_end = com_y(b.b_end, lp).horizontal;
  Eigen::Matrix3d a;
  a.row(0) << 1.0, -1.0, 0.0;
  a.bottomRows<2>() = ky;
  const Eigen::Vector3d rhs(0.0, req.t_ssp / (2.0 * m * sc.t2) * (L - sc.t1 * y_end), 0.0);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(a);
  if (!lu.isInvertible() || std::abs(a.determinant()) < 1e-12) {
    throw GaitError(ErrorCode::singular, "Y end-velocity system singular");
  }
  const Eigen::Vector3d delta = lu.solve(rhs);
  b.b_prev = b.b_end - delta;
  return b;
}

BoundaryY solve_boundary_y(const GaitRequestY& req, const LinkParams& lp) {
  FreeY f;
  f.torso_sign = req.seeds.torso_sign;
  const Eigen::Matrix<double, 2, 5>& p = req.seeds.polygon;
  f.legs_start = req.seeds.relative ? kPi + 0.5 * (p(0, 1) + p(1, 1)) : 0.5 * (p(0, 1) + p(1, 1));
  return solve_boundary_y(req, lp, f);
}

// ---- CoM height -----------------------------------------------------------------

double height_deviation(const BezierCurve& curve, double z0, const LinkParams& lp, Model model,
                        int n) {
  const GridMatrix q = curve.eval_grid(uniform_grid(curve.duration(), n));
  const std::vector<double> z =
      model == Model::X ? detail::com_grid_x(q, lp).z : detail::com_grid_y(q, lp).z;
  double worst = 0.0;
  for (double v : z) worst = std::max(worst, std::abs(v - z0));
  return worst;
}

BezierCurve enforce_com_height(const BezierCurve& curve, int channel, double z0,
                               const LinkParams& lp, Model model, const HeightOptions& opts) {
  if (channel != torso_channel(model) || channel >= curve.channels()) {
    throw GaitError(ErrorCode::invalid_argument, "height is enforced through the torso channel");
  }
  const int n = curve.degree();
  const double T = curve.duration();
  const std::vector<double> times = uniform_grid(T, opts.grid);
  const GridMatrix q = curve.eval_grid(times);

  std::vector<double> legs;
  double coeff = 0.0;
  torso_split(q, lp, model, legs, coeff);
  const double mass = lp.total_mass();
  const Eigen::MatrixXd& ctrl = curve.control();
  // Both arccos roots are equally far from upright; follow the boundary value's side.
  const double sign = ctrl(channel, 0) >= 0.0 ? 1.0 : -1.0;

  std::vector<Sample> samples(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double arg = (z0 * mass - legs[k]) / coeff;
    if (!(std::abs(arg) <= 1.0)) {
      throw GaitError(ErrorCode::domain, "CoM height unreachable at t = " + fmt(times[k]) +
                                             " s (cos(torso) = " + fmt(arg) + ")");
    }
    samples[k] = {times[k], sign * std::acos(arg)};
  }
  const std::vector<Pin> pins = {{0, ctrl(channel, 0)},
                                 {1, ctrl(channel, 1)},
                                 {n - 1, ctrl(channel, n - 1)},
                                 {n, ctrl(channel, n)}};
  const auto refit = [&](const std::vector<Sample>& pts) {
    Eigen::MatrixXd out = ctrl;
    out.row(channel) = fit_constrained(pts, n, T, pins).curve.control().row(0);
    return BezierCurve(std::move(out), T);
  };
  BezierCurve result = refit(samples);
  double dev = height_deviation(result, z0, lp, model, opts.check_grid);

  // Least squares on the angle does not minimise the worst height error. When it
  // misses the tolerance, Lawson reweighting drives the fit toward minimax.
  for (int it = 0; it < opts.minimax_iters && !(dev <= opts.tol); ++it) {
    const GridMatrix qk = result.eval_grid(times);
    const std::vector<double> z =
        model == Model::X ? detail::com_grid_x(qk, lp).z : detail::com_grid_y(qk, lp).z;
    double wmax = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      samples[k].weight *= std::abs(z[k] - z0) + 1e-12;
      wmax = std::max(wmax, samples[k].weight);
    }
    for (Sample& sm : samples) sm.weight /= wmax;
    BezierCurve next = refit(samples);
    const double d = height_deviation(next, z0, lp, model, opts.check_grid);
    if (d < dev) {
      dev = d;
      result = std::move(next);
    }
  }
  if (!(dev <= opts.tol)) {
    throw GaitError(ErrorCode::infeasible, "torso refit leaves height deviation " + fmt(dev) +
                                               " m > " + fmt(opts.tol) + " m");
  }
  return result;
}

// ---- Algorithm loops ------------------------------------------------------------

PlanX plan_x(const GaitRequestX& req, const LinkParams& lp) {
  const auto t0 = std::chrono::steady_clock::now();
  lp.validate();
  const StepTiming st = resolve_timing(req);
  const int n = req.degree;
  if (n < 3) throw GaitError(ErrorCode::invalid_argument, "degree must be at least 3");
  const double max_reach = 2.0 * (lp.lx1 + lp.lx2);
  if (std::abs(st.step_length) > max_reach) {
    throw GaitError(ErrorCode::out_of_range,
                    "step length " + fmt(st.step_length) + " m exceeds kinematic reach " +
                        fmt(max_reach) + " m (2 (lx1 + lx2))");
  }
  HlipParams hp{req.z0, lp.g, st.t_ssp};
  hp.validate();

  // Seed polygon at the requested degree.
  Eigen::MatrixXd seed(4, n + 1);
  if (n >= 4) {
    seed = BezierCurve(req.seeds.polygon, 1.0).elevated(n).control();
  } else {
    seed << req.seeds.polygon.col(0), req.seeds.polygon.col(1), req.seeds.polygon.col(3),
        req.seeds.polygon.col(4);
  }
  if (st.step_length < 0.0) {
    // phi(T - t) keeps the swap and clearance conditions and negates the step.
    seed = seed.rowwise().reverse().eval();
  }
  const int interior = n - 3;  // columns 2..N-2
  const int dims = 4 + 4 * interior;
  Eigen::VectorXd base(dims);
  base(0) = seed(0, 0);
  base.segment<3>(1) = seed.block<3, 1>(0, n - 1);
  for (int j = 0; j < interior; ++j) base.segment<4>(4 + 4 * j) = seed.col(2 + j);

  const SearchOptions& so = req.search;
  std::mt19937_64 rng(so.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::vector<double> gate_t = uniform_grid(st.t_ssp, so.gate_grid);
  HeightOptions hopts{so.height_grid, so.verify_grid, so.tol.height};
  BestFailure best;

  for (int k = 0; k < so.samples; ++k) {
    Eigen::VectorXd x = base;
    if (k > 0) {
      for (int i = 0; i < dims; ++i) x(i) += so.radius * unit(rng);
    }
    for (int attempt = 0; attempt < 2; ++attempt) {
      FreeX free;
      free.knee0 = x(0);
      free.end_prev = x.segment<3>(1);
      free.torso_sign = (attempt == 0 ? 1 : -1) * (req.seeds.torso_sign >= 0 ? 1 : -1);
      BoundaryX b;
      try {
        b = solve_boundary_x(req, lp, free);
      } catch (const GaitError& e) {
        best.offer(kBoundary, 0.0, e.what());
        // The height and reach conditions do not depend on the torso branch.
        if (e.code() == ErrorCode::domain || e.code() == ErrorCode::out_of_range) break;
        continue;
      }
      Eigen::MatrixXd ctrl(5, n + 1);
      ctrl.col(0) = b.a0;
      ctrl.col(1) = b.a1;
      ctrl.col(n - 1) = b.a_prev;
      ctrl.col(n) = b.a_end;
      for (int j = 0; j < interior; ++j) {
        ctrl.block<4, 1>(0, 2 + j) = x.segment<4>(4 + 4 * j);
        const double w = static_cast<double>(j + 1) / (interior + 1);
        ctrl(4, 2 + j) = (1.0 - w) * b.a1(4) + w * b.a_prev(4);
      }
      BezierCurve curve(ctrl, st.t_ssp);

      const GridMatrix qg = curve.eval_grid(gate_t);
      const std::vector<double> gamma = detail::clearance_grid_x(qg, lp);
      const detail::ClearanceCheck cc =
          detail::interior_clearance(gamma.data(), gate_t, st.t_ssp, so.tol);
      if (!cc.pass) {
        best.offer(kGate, cc.violation,
                   "swing-foot clearance violated by " + fmt(cc.violation) + " m");
        continue;
      }
      try {
        curve = enforce_com_height(curve, 4, req.z0, lp, Model::X, hopts);
      } catch (const GaitError& e) {
        best.offer(kHeight, height_metric(e), e.what());
        continue;
      }
      PlanX plan;
      plan.curve = curve;
      plan.request = req;
      plan.step_length = st.step_length;
      plan.t_ssp = st.t_ssp;
      plan.z0 = req.z0;
      plan.report = verify_x(plan, lp, hp, so.verify_grid, so.tol);
      if (!plan.report.pass()) {
        best.offer(kVerify, report_excess(plan.report),
                   "verification failed: " + plan.report.failures());
        continue;
      }
      plan.sample_index = k;
      plan.solve_time = elapsed_since(t0);
      return plan;
    }
  }
  throw GaitError(ErrorCode::infeasible, "no feasible X plan in " + std::to_string(so.samples) +
                                             " samples; best attempt: " + best.message);
}

PlanY plan_y(const GaitRequestY& req, const LinkParams& lp_in) {
  const auto t0 = std::chrono::steady_clock::now();
  lp_in.validate();
  const int m = req.degree;
  if (m < 3) throw GaitError(ErrorCode::invalid_argument, "degree must be at least 3");
  Vec5 x_seed;
  x_seed << 0.1, 0.0, 0.0, 0.1, 0.0;
  const LegLengths legs = req.legs ? *req.legs : y_leg_lengths(x_seed, lp_in);
  const LinkParams lp = with_y_legs(lp_in, legs);
  const double L = req.walking_speed * req.t_ssp;
  if (!(std::abs(L) <= 2.0 * lp.ly1)) {
    throw GaitError(ErrorCode::out_of_range, "lateral step " + fmt(L) + " m exceeds 2 ly1 = " +
                                                 fmt(2.0 * lp.ly1) + " m");
  }
  HlipParams hp{req.z0, lp.g, req.t_ssp};
  hp.validate();

  // Leg seed polygon at degree M, mirrored about vertical for negative steps.
  const bool mirror = L < 0.0;
  const double end1 = kPi + std::asin(L / (2.0 * lp.ly1));
  const double end[2] = {end1, 2.0 * kPi - end1};
  Eigen::MatrixXd seed(2, m + 1);
  {
    Eigen::MatrixXd p(2, m + 1);
    if (m >= 4) {
      p = BezierCurve(req.seeds.polygon, 1.0).elevated(m).control();
    } else {
      p << req.seeds.polygon.col(0), req.seeds.polygon.col(1), req.seeds.polygon.col(3),
          req.seeds.polygon.col(4);
    }
    for (int j = 0; j <= m; ++j) {
      for (int i = 0; i < 2; ++i) {
        if (req.seeds.relative) {
          const double off = mirror ? -p(i, j) : p(i, j);
          // beta_0 and beta_1 sit at pi; later columns follow the line to beta_M.
          const double line = j >= 2 ? (end[i] - kPi) * j / m : 0.0;
          seed(i, j) = kPi + line + off;
        } else {
          seed(i, j) = mirror ? 2.0 * kPi - p(i, j) : p(i, j);
        }
      }
    }
  }
  const int interior = m - 3;
  const int dims = 1 + 2 * interior;
  Eigen::VectorXd base(dims);
  base(0) = 0.5 * (seed(0, 1) + seed(1, 1));
  for (int j = 0; j < interior; ++j) base.segment<2>(1 + 2 * j) = seed.col(2 + j);

  const SearchOptions& so = req.search;
  std::mt19937_64 rng(so.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const std::vector<double> gate_t = uniform_grid(req.t_ssp, so.gate_grid);
  HeightOptions hopts{so.height_grid, so.verify_grid, so.tol.height};
  BestFailure best;

  for (int k = 0; k < so.samples; ++k) {
    Eigen::VectorXd x = base;
    if (k > 0) {
      for (int i = 0; i < dims; ++i) x(i) += so.radius * unit(rng);
    }
    for (int attempt = 0; attempt < 2; ++attempt) {
      FreeY free;
      free.legs_start = x(0);
      free.torso_sign = (attempt == 0 ? 1 : -1) * (req.seeds.torso_sign >= 0 ? 1 : -1);
      BoundaryY b;
      try {
        b = solve_boundary_y(req, lp, free);
      } catch (const GaitError& e) {
        best.offer(kBoundary, 0.0, e.what());
        if (e.code() == ErrorCode::domain || e.code() == ErrorCode::out_of_range) break;
        continue;
      }
      Eigen::MatrixXd ctrl(3, m + 1);
      ctrl.col(0) = b.b0;
      ctrl.col(1) = b.b1;
      ctrl.col(m - 1) = b.b_prev;
      ctrl.col(m) = b.b_end;
      for (int j = 0; j < interior; ++j) {
        ctrl.block<2, 1>(0, 2 + j) = x.segment<2>(1 + 2 * j);
        const double w = static_cast<double>(j + 1) / (interior + 1);
        ctrl(2, 2 + j) = (1.0 - w) * b.b1(2) + w * b.b_prev(2);
      }
      BezierCurve curve(ctrl, req.t_ssp);

      const GridMatrix qg = curve.eval_grid(gate_t);
      const std::vector<double> gamma = detail::clearance_grid_y(qg, lp);
      const detail::ClearanceCheck cc =
          detail::interior_clearance(gamma.data(), gate_t, req.t_ssp, so.tol);
      if (!cc.pass) {
        best.offer(kGate, cc.violation,
                   "swing-foot clearance violated by " + fmt(cc.violation) + " m");
        continue;
      }
      try {
        curve = enforce_com_height(curve, 2, req.z0, lp, Model::Y, hopts);
      } catch (const GaitError& e) {
        best.offer(kHeight, height_metric(e), e.what());
        continue;
      }
      PlanY plan;
      plan.curve = curve;
      plan.request = req;
      plan.step_length = L;
      plan.t_ssp = req.t_ssp;
      plan.z0 = req.z0;
      plan.legs = legs;
      plan.report = verify_y(plan, lp_in, hp, so.verify_grid, so.tol);
      if (!plan.report.pass()) {
        best.offer(kVerify, report_excess(plan.report),
                   "verification failed: " + plan.report.failures());
        continue;
      }
      plan.sample_index = k;
      plan.solve_time = elapsed_since(t0);
      return plan;
    }
  }
  throw GaitError(ErrorCode::infeasible, "no feasible Y plan in " + std::to_string(so.samples) +
                                             " samples; best attempt: " + best.message);
}

}  // namespace hlipgait

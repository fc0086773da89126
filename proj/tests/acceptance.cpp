// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hlipgait/error.hpp"
#include "hlipgait/hlip.hpp"
#include "hlipgait/kernels.hpp"
#include "hlipgait/planar_models.hpp"
#include "hlipgait/planner.hpp"
#include "hlipgait/retarget.hpp"
#include "hlipgait/rewards.hpp"
#include "hlipgait/verify.hpp"

using namespace hlipgait;

namespace {

constexpr double kPi = 3.14159265358979323846;

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Classical RK4 on p'' = lambda^2 p.
HlipState rk4(HlipState s, double lambda, double t, int steps) {
  const double h = t / steps, w = lambda * lambda;
  for (int i = 0; i < steps; ++i) {
    const double k1p = s.v, k1v = w * s.p;
    const double k2p = s.v + 0.5 * h * k1v, k2v = w * (s.p + 0.5 * h * k1p);
    const double k3p = s.v + 0.5 * h * k2v, k3v = w * (s.p + 0.5 * h * k2p);
    const double k4p = s.v + h * k3v, k4v = w * (s.p + h * k3p);
    s.p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    s.v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  return s;
}

void criterion1() {
  const auto t0 = Clock::now();
  const HlipParams hp;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0), ut(0.0, hp.t_ssp);
  double flow_err = 0.0, step_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const HlipState s{0.3 * u(rng), u(rng)};
    const double t = ut(rng);
    const HlipState a = ssp_flow(s, hp, t), b = rk4(s, hp.lambda(), t, 400);
    flow_err = std::max({flow_err, std::abs(a.p - b.p), std::abs(a.v - b.v)});
    const HlipState fin = ssp_flow(s, hp, hp.t_ssp);
    step_err = std::max(step_err, std::abs(step_length_from_final(fin, hp) - (fin.p - s.p)));
  }
  const double dt = seconds_since(t0);
  report(1, flow_err <= 1e-8 && step_err <= 1e-12 && dt < 1.0,
         fmt("flow vs RK4 max err %.3g (tol 1e-8), step length err %.3g (tol 1e-12), %.3f s",
             flow_err, step_err, dt));
}

void criterion2(const LinkParams& lp) {
  GaitRequestX req;
  req.step_length = 0.25;
  req.walking_speed = 0.625;
  req.z0 = 0.856;
  req.degree = 4;
  const auto t0 = Clock::now();
  try {
    const PlanX p = plan_x(req, lp);
    const VerifyReport r = verify_x(p, lp, {p.z0, lp.g, p.t_ssp});
    const double dt = seconds_since(t0);
    report(2, r.pass() && std::abs(p.t_ssp - 0.4) < 1e-12 && dt < 1.0,
           fmt("X plan at z0 0.856: t_ssp %.6g, verify %s, %.3f s", p.t_ssp,
               r.pass() ? "pass" : r.failures().c_str(), dt));
  } catch (const GaitError& e) {
    report(2, false, fmt("X plan at z0 0.856 failed after %.3f s: %s", seconds_since(t0), e.what()));
  }
}

void criterion3(const LinkParams& lp) {
  GaitRequestY req;
  req.walking_speed = 0.8;
  req.z0 = 0.856;
  std::string boundary;
  bool sum_ok = false;
  try {
    const LegLengths legs = y_leg_lengths((Vec5() << 0.1, 0.0, 0.0, 0.1, 0.0).finished(), lp);
    GaitRequestY r = req;
    r.legs = legs;
    const BoundaryY b = solve_boundary_y(r, with_y_legs(lp, legs));
    const double sum_err = std::abs(b.b_end(0) + b.b_end(1) - 2.0 * kPi);
    sum_ok = sum_err <= 1e-12;
    boundary = fmt("beta sum err %.3g", sum_err);
  } catch (const GaitError& e) {
    boundary = std::string("boundary solve failed: ") + e.what();
  }
  try {
    const PlanY p = plan_y(req, lp);
    const VerifyReport r = verify_y(p, lp, {p.z0, lp.g, p.t_ssp});
    const bool len_ok = std::abs(p.step_length - 0.32) <= 1e-12;
    report(3, sum_ok && len_ok && r.pass(),
           fmt("Y plan at z0 0.856: L %.12g, %s, verify %s", p.step_length, boundary.c_str(),
               r.pass() ? "pass" : r.failures().c_str()));
  } catch (const GaitError& e) {
    report(3, false, fmt("Y plan at z0 0.856 failed: %s; %s", e.what(), boundary.c_str()));
  }
}

void criterion4(const LinkParams& lp) {
  const int want = 100, max_draws = 2000;
  std::mt19937_64 rng(404);

  int ok_x = 0, draws_x = 0;
  double err_x = 0.0;
  std::uniform_real_distribution<double> ux(-0.4, 0.4);
  while (ok_x < want && draws_x < max_draws) {
    ++draws_x;
    GaitRequestX req;
    req.step_length = ux(rng);
    req.z0 = 0.58;
    try {
      const PlanX p = plan_x(req, lp);
      const Eigen::MatrixXd& c = p.curve.control();
      const double L = step_length_x(c.col(0), c.col(c.cols() - 1), lp);
      err_x = std::max(err_x, std::abs(L - *req.step_length));
      ++ok_x;
    } catch (const GaitError&) {
    }
  }

  int ok_y = 0, draws_y = 0;
  double err_y = 0.0;
  // Y step length is V t_ssp, so |L| <= 0.5 maps to |V| <= 1.25.
  std::uniform_real_distribution<double> uy(-1.25, 1.25);
  while (ok_y < want && draws_y < max_draws) {
    ++draws_y;
    GaitRequestY req;
    req.walking_speed = uy(rng);
    req.z0 = 0.75;
    try {
      const PlanY p = plan_y(req, lp);
      const Eigen::MatrixXd& c = p.curve.control();
      const double L = step_length_y(c.col(c.cols() - 1), with_y_legs(lp, p.legs));
      err_y = std::max(err_y, std::abs(L - req.walking_speed * req.t_ssp));
      ++ok_y;
    } catch (const GaitError&) {
    }
  }
  report(4, ok_x == want && ok_y == want && err_x <= 1e-6 && err_y <= 1e-6,
         fmt("X z0 0.58: %d/%d plans in %d draws, max err %.3g; Y z0 0.75: %d/%d in %d draws, "
             "max err %.3g (tol 1e-6)",
             ok_x, want, draws_x, err_x, ok_y, want, draws_y, err_y));
}

struct Batch {
  int feasible = 0;
  double total = 0.0;
  double median_ms = 0.0;
};

Batch run_batch(int k, double vmax, const std::function<void(double)>& plan_one) {
  Batch b;
  std::vector<double> times;
  for (int i = 0; i < k; ++i) {
    const double v = -vmax + 2.0 * vmax * i / (k - 1);
    const auto t0 = Clock::now();
    try {
      plan_one(v);
      ++b.feasible;
    } catch (const GaitError&) {
    }
    times.push_back(seconds_since(t0));
    b.total += times.back();
  }
  b.median_ms = 1e3 * median(times);
  return b;
}

void criterion5(const LinkParams& lp) {
  const int k = 1000;
  auto x_at = [&](double z0) {
    return [&lp, z0](double v) {
      GaitRequestX r;
      r.walking_speed = v;
      r.z0 = z0;
      plan_x(r, lp);
    };
  };
  const Batch x = run_batch(k, 1.2, x_at(0.825));
  const Batch y = run_batch(k, 0.4, [&](double v) {
    GaitRequestY r;
    r.walking_speed = v;
    r.z0 = 0.825;
    plan_y(r, lp);
  });
  std::printf("  kernels: %s\n", kernels::active().name);
  std::printf("  alg1 X z0 0.825: %d/%d feasible, total %.3f s, median %.3f ms\n", x.feasible, k,
              x.total, x.median_ms);
  std::printf("  alg2 Y z0 0.825: %d/%d feasible, total %.3f s, median %.3f ms\n", y.feasible, k,
              y.total, y.median_ms);
  const Batch xs = run_batch(200, 1.0, x_at(0.58));
  std::printf("  supplementary alg1 X z0 0.58, |V| <= 1.0: %d/200 feasible, total %.3f s, "
              "median %.3f ms\n",
              xs.feasible, xs.total, xs.median_ms);
  // A batch that returns no plans does not meet a latency budget for producing them.
  const bool x_ok = x.total <= 10.0 && x.feasible == k;
  const bool y_ok = y.total <= 0.5 && y.feasible == k;
  report(5, x_ok && y_ok,
         fmt("X %.3f s for %d/%d plans (budget 10 s), Y %.3f s for %d/%d plans (budget 0.5 s)",
             x.total, x.feasible, k, y.total, y.feasible, k));
}

void criterion6() {
  double lo = 1e9, hi = -1e9;
  for (int s : {0, 1}) {
    for (int i = 0; i <= 1000; ++i) {
      const double r = reward_cs_leg(i * 1e-3, s);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  PhaseConfig cfg;
  cfg.r_st = 0.5;
  cfg.delta_tau = {0.0, 0.5};
  double comp = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double t = 3.0 * i / 10000.0;
    comp = std::max(comp, std::abs(phase_c(t, 0, cfg) + phase_c(t, 1, cfg) - 1.0));
  }
  const Eigen::VectorXd q = Eigen::VectorXd::LinSpaced(12, -0.5, 0.7);
  const double track = reward_track({q, q});
  report(6, lo >= -0.3 && hi <= 1.0 && comp <= 1e-12 && track == 1.0,
         fmt("r_cs range [%.6g, %.6g], max |C1 + C2 - 1| %.3g, r_track(0) = %.17g", lo, hi, comp,
             track));
}

void criterion7(const LinkParams& lp) {
  try {
    GaitRequestX rx;
    rx.step_length = 0.25;
    rx.z0 = 0.6;
    const PlanX px = plan_x(rx, lp);
    GaitRequestY ry;
    ry.walking_speed = 0.3;
    ry.z0 = 0.6;
    ry.legs = y_leg_lengths(px.curve.control().col(0), lp);
    const PlanY py = plan_y(ry, lp);

    double per_q = 0.0, per_dq = 0.0, hpz = 0.0;
    for (Stance s : {Stance::right, Stance::left}) {
      const RobotGait g = assemble_gait(px, py, s);
      for (double t = 0.0; t <= g.duration(); t += 0.0137) {
        const GaitSample a = g.at(t), b = g.at(t + g.duration());
        per_q = std::max(per_q, (a.q - b.q).cwiseAbs().maxCoeff());
        per_dq = std::max(per_dq, (a.dq - b.dq).cwiseAbs().maxCoeff());
      }
      const GaitSample a = g.at(0.0), b = g.at(g.duration());
      per_q = std::max(per_q, (a.q - b.q).cwiseAbs().maxCoeff());
      per_dq = std::max(per_dq, (a.dq - b.dq).cwiseAbs().maxCoeff());
      for (const GaitSample& x : sample(g, 0.001)) {
        hpz = std::max({hpz, std::abs(x.q(10)), std::abs(x.q(11)), std::abs(x.dq(10)),
                        std::abs(x.dq(11))});
      }
    }

    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int bad_rows = 0;
    for (int k = 0; k < 1000; ++k) {
      const Vec5 x = Vec5::NullaryExpr([&](Eigen::Index) { return u(rng); });
      const Vec3 y(kPi + u(rng), kPi + u(rng), u(rng));
      const double y1 = y(0) - kPi, y2 = y(1) - kPi, y3 = y(2);
      const JointVector12 j = map_config(x, y, Stance::right);
      const double expect[12] = {-x(2) - x(3), -x(3), x(2) + x(4), -x(0) - x(1), -x(0),
                                 x(1) + x(4),  y1,    y1 - y3,     y2,           y2 - y3,
                                 0.0,          0.0};
      for (int i = 0; i < 12; ++i) bad_rows += j(i) != expect[i];
      if (map_config(x, y, Stance::left) != mirror_joints(j)) ++bad_rows;
    }
    report(7, per_q <= 1e-9 && per_dq <= 1e-9 && hpz == 0.0 && bad_rows == 0,
           fmt("periodicity err q %.3g dq %.3g (tol 1e-9), max |hpz| %.3g, row mismatches %d",
               per_q, per_dq, hpz, bad_rows));
  } catch (const GaitError& e) {
    report(7, false, std::string("planning failed: ") + e.what());
  }
}

void criterion8(const LinkParams& lp) {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double h = 1e-6;
  double ex = 0.0, ey = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const Vec5 q = Vec5::NullaryExpr([&](Eigen::Index) { return u(rng); });
    const Mat25 j = com_jacobian_x(q, lp);
    for (int i = 0; i < 5; ++i) {
      Vec5 a = q, b = q;
      a(i) += h;
      b(i) -= h;
      const Com ca = com_x(a, lp), cb = com_x(b, lp);
      ex = std::max({ex, std::abs((ca.horizontal - cb.horizontal) / (2 * h) - j(0, i)),
                     std::abs((ca.z - cb.z) / (2 * h) - j(1, i))});
    }
  }
  const LinkParams ly = with_y_legs(lp, {0.7199, 0.7199});
  for (int k = 0; k < 1000; ++k) {
    const Vec3 q(kPi + 0.5 * u(rng), kPi + 0.5 * u(rng), u(rng));
    const Mat23 j = com_jacobian_y(q, ly);
    for (int i = 0; i < 3; ++i) {
      Vec3 a = q, b = q;
      a(i) += h;
      b(i) -= h;
      const Com ca = com_y(a, ly), cb = com_y(b, ly);
      ey = std::max({ey, std::abs((ca.horizontal - cb.horizontal) / (2 * h) - j(0, i)),
                     std::abs((ca.z - cb.z) / (2 * h) - j(1, i))});
    }
  }
  report(8, ex <= 1e-6 && ey <= 1e-6,
         fmt("K_x max FD err %.3g, K_y max FD err %.3g (tol 1e-6, h 1e-6)", ex, ey));
}

// Diagnostic only: published seeds as initialization at a reachable height.
void seed_diagnostic(const LinkParams& lp) {
  std::printf("diagnostic: published seeds as initialization\n");
  for (double z0 : {0.58, 0.60}) {
    int found = 0, passed = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      GaitRequestX rx;
      rx.step_length = 0.25;
      rx.walking_speed = 0.625;
      rx.z0 = z0;
      rx.seeds = SeedsX::reference();
      rx.search.seed = seed;
      try {
        const PlanX p = plan_x(rx, lp);
        const HlipParams hp{p.z0, lp.g, p.t_ssp};
        ++found;
        if (verify_x(p, lp, hp).pass()) ++passed;
        if (first.empty()) {
          const Deviation d = hlip_consistency(p, lp, hp);
          first = fmt(", first plan H-LIP deviation %.4g m, %.4g m/s", d.position, d.velocity);
        }
      } catch (const GaitError&) {
      }
    }
    std::printf("  X reference seeds, L 0.25, z0 %.2f: %d/20 sampler seeds planned, %d verify%s\n",
                z0, found, passed, first.c_str());
  }
  GaitRequestY ry;
  ry.walking_speed = 0.8;
  ry.z0 = 0.6;
  ry.seeds = SeedsY::reference();
  ry.search.radius = 0.5;
  try {
    const PlanY p = plan_y(ry, lp);
    const HlipParams hp{p.z0, lp.g, p.t_ssp};
    const Deviation d = hlip_consistency(p, lp, hp);
    std::printf("  Y reference seeds, V 0.8, z0 0.60: plan found (sample %d), verify %s, H-LIP deviation %.4g m, "
                "%.4g m/s\n",
                p.sample_index, verify_y(p, lp, hp).pass() ? "pass" : "fail", d.position,
                d.velocity);
  } catch (const GaitError& e) {
    std::printf("  Y reference seeds, V 0.8, z0 0.60: no plan (%s)\n", e.what());
  }
}

}  // namespace

int main() {
  const LinkParams lp;
  criterion1();
  criterion2(lp);
  criterion3(lp);
  criterion4(lp);
  criterion5(lp);
  criterion6();
  criterion7(lp);
  criterion8(lp);
  seed_diagnostic(lp);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

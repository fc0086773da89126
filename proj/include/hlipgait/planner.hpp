#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "hlipgait/bezier.hpp"
#include "hlipgait/planar_models.hpp"
#include "hlipgait/report.hpp"

namespace hlipgait {

struct SearchOptions {
  int samples = 256;
  double radius = 0.1;
  std::uint64_t seed = 0;
  int gate_grid = 200;     // clearance pre-check
  int height_grid = 201;   // pointwise torso solve
  int verify_grid = 1000;
  VerifyTolerances tol;
};

// Degree-4 seed polygon for channels q1..q4; columns are alpha_0..alpha_4.
// The boundary solve overwrites everything except alpha^1_0, alpha^{1,2,3}_3 and
// the interior column, which are the sampled free parameters.
struct SeedsX {
  Eigen::Matrix<double, 4, 5> polygon;
  int torso_sign = 1;

  static SeedsX nominal();    // default: shallower interior swing
  static SeedsX reference();  // the published table values
};

struct GaitRequestX {
  std::optional<double> step_length;    // L
  std::optional<double> walking_speed;  // V; with L given, sets t_ssp = L / V
  double t_ssp = 0.4;
  double z0 = 0.856;
  int degree = 4;
  SeedsX seeds = SeedsX::nominal();
  SearchOptions search;
};

struct StepTiming {
  double step_length = 0.0;
  double t_ssp = 0.0;
};

StepTiming resolve_timing(const GaitRequestX& req);

// Leg seeds for the Y-model. In relative mode the interior columns are offsets
// from the straight line between (pi, pi) and beta_M, mirrored for negative steps,
// so they scale with the request. In absolute mode they are used as given.
struct SeedsY {
  Eigen::Matrix<double, 2, 5> polygon;
  bool relative = true;
  int torso_sign = 1;

  static SeedsY nominal();
  static SeedsY reference();  // the published table values, absolute
};

struct GaitRequestY {
  double walking_speed = 0.0;  // V_y
  double t_ssp = 0.4;
  double z0 = 0.856;
  int degree = 4;
  SeedsY seeds = SeedsY::nominal();
  SearchOptions search;
  // Stance/swing leg lengths; derived from the reference X seed when empty.
  std::optional<LegLengths> legs;
};

struct PlanX {
  BezierCurve curve;
  GaitRequestX request;
  double step_length = 0.0;
  double t_ssp = 0.0;
  double z0 = 0.0;
  VerifyReport report;
  double solve_time = 0.0;
  int sample_index = -1;
};

struct PlanY {
  BezierCurve curve;
  GaitRequestY request;
  double step_length = 0.0;
  double t_ssp = 0.0;
  double z0 = 0.0;
  LegLengths legs;
  VerifyReport report;
  double solve_time = 0.0;
  int sample_index = -1;
};

// Sampled free parameters of the X boundary solve (0-based control indices).
struct FreeX {
  double knee0 = 0.0;        // alpha^1_0
  Eigen::Vector3d end_prev;  // alpha^{1,2,3}_{N-1}
  int torso_sign = 1;
};

struct BoundaryX {
  Vec5 a0, a1, a_prev, a_end;  // alpha_0, alpha_1, alpha_{N-1}, alpha_N
  double contact_mid = 0.0;    // s = (alpha^2_0 + alpha^3_0) / 2
  double half_split = 0.0;     // d = (alpha^2_N - alpha^3_N) / 2
};

BoundaryX solve_boundary_x(const GaitRequestX& req, const LinkParams& lp, const FreeX& free);

struct FreeY {
  double legs_start = 3.14159265358979323846;  // beta^1_1 = beta^2_1
  int torso_sign = 1;
};

struct BoundaryY {
  Vec3 b0, b1, b_prev, b_end;
};

// lp must carry the Y leg lengths (see with_y_legs).
BoundaryY solve_boundary_y(const GaitRequestY& req, const LinkParams& lp, const FreeY& free);

// solve_boundary_y with the seed's free parameters.
BoundaryY solve_boundary_y(const GaitRequestY& req, const LinkParams& lp);

// Maximum |L| the X boundary solve can reach for a given alpha^1_0.
double x_reach(double knee0, const LinkParams& lp);

// Step length in the printed ratio form, valid when sin(s) is not small.
double step_length_lemma(double knee0, double contact_mid, double half_split,
                         const LinkParams& lp);

enum class Model { X, Y };

struct HeightOptions {
  int grid = 201;
  int check_grid = 1000;
  double tol = 1e-3;
  int minimax_iters = 12;  // reweighting passes when the plain fit misses tol
};

// Re-solve the torso channel pointwise for z_com = z0 and refit it with the
// four boundary control points pinned. Throws GaitError(domain) or
// GaitError(infeasible) when the solve or the refit fails.
BezierCurve enforce_com_height(const BezierCurve& curve, int channel, double z0,
                               const LinkParams& lp, Model model,
                               const HeightOptions& opts = {});

// Max |z_com - z0| over an n-point grid.
double height_deviation(const BezierCurve& curve, double z0, const LinkParams& lp, Model model,
                        int n);

PlanX plan_x(const GaitRequestX& req, const LinkParams& lp);
PlanY plan_y(const GaitRequestY& req, const LinkParams& lp);

}  // namespace hlipgait

// gaitplan: plan, verify, export, score and benchmark H-LIP gaits.
#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hlipgait/error.hpp"
#include "hlipgait/gait_file.hpp"
#include "hlipgait/hlip.hpp"
#include "hlipgait/kernels.hpp"
#include "hlipgait/planner.hpp"
#include "hlipgait/retarget.hpp"
#include "hlipgait/rewards.hpp"
#include "hlipgait/verify.hpp"

using namespace hlipgait;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument:
    case ErrorCode::schema:
    case ErrorCode::io:
      return kExitUsage;
    default:
      return kExitFail;
  }
}

struct Common {
  std::string params;
};

struct PlanArgs {
  std::optional<double> lx, vx;
  double vy = 0.0;
  double t_ssp = 0.4;
  double z0 = 0.60;
  int degree = 4;
  int degree_y = 4;
  std::uint64_t seed = 0;
  int samples = 256;
  double radius = 0.1;
  std::string stance = "right";
  std::string out;
  bool timestamp = false;
  std::optional<double> embed_dt;
};

std::string iso_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

int cmd_plan(const Common& common, const PlanArgs& a) {
  const LinkParams lp = resolve_link_params(common.params);
  GaitRequestX rx;
  rx.step_length = a.lx;
  rx.walking_speed = a.vx;
  rx.t_ssp = a.t_ssp;
  rx.z0 = a.z0;
  rx.degree = a.degree;
  rx.search.samples = a.samples;
  rx.search.radius = a.radius;
  rx.search.seed = a.seed;
  const Stance stance = parse_stance(a.stance);

  GaitFile file;
  file.robot = lp;
  file.stance_first = stance;
  file.x = plan_x(rx, lp);

  GaitRequestY ry;
  ry.walking_speed = a.vy;
  ry.t_ssp = file.x.t_ssp;
  ry.z0 = a.z0;
  ry.degree = a.degree_y;
  ry.search = rx.search;
  ry.legs = y_leg_lengths(file.x.curve.eval(0.0), lp);
  file.y = plan_y(ry, lp);

  assemble_gait(file.x, file.y, stance);  // checks the plans agree on t_ssp and z0
  if (a.timestamp) file.created = iso_now();
  file.trajectory_dt = a.embed_dt;
  write_gait_file(a.out, file);

  json summary = {{"out", a.out},
                  {"t_ssp", round9(file.x.t_ssp)},
                  {"z0", round9(a.z0)},
                  {"x", {{"step_length", round9(file.x.step_length)},
                         {"sample_index", file.x.sample_index},
                         {"solve_time_s", round9(file.x.solve_time)}}},
                  {"y", {{"step_length", round9(file.y.step_length)},
                         {"sample_index", file.y.sample_index},
                         {"solve_time_s", round9(file.y.solve_time)}}}};
  std::cout << summary.dump() << '\n';
  return kExitOk;
}

int cmd_verify(const Common& common, const std::string& in, int grid) {
  (void)common;
  const GaitFile f = read_gait_file(in);
  const HlipParams hp{f.x.z0, f.robot.g, f.x.t_ssp};
  const VerifyReport rx = verify_x(f.x, f.robot, hp, grid);
  const VerifyReport ry = verify_y(f.y, f.robot, hp, grid);
  const bool pass = rx.pass() && ry.pass();
  json out = {{"pass", pass}, {"grid", grid}, {"x", to_json(rx)}, {"y", to_json(ry)}};
  std::cout << out.dump(2) << '\n';
  return pass ? kExitOk : kExitFail;
}

int cmd_export(const std::string& in, double dt, int cycles, const std::string& out_path) {
  if (!(dt > 0.0)) throw GaitError(ErrorCode::invalid_argument, "--dt must be positive");
  const GaitFile f = read_gait_file(in);
  const RobotGait gait(f.x.curve, f.y.curve, f.stance_first);
  const std::vector<GaitSample> samples = sample(gait, dt, cycles);
  if (out_path.empty() || out_path == "-") {
    write_trajectory_csv(std::cout, samples);
  } else {
    std::ofstream out(out_path);
    if (!out) throw GaitError(ErrorCode::io, "cannot write " + out_path);
    write_trajectory_csv(out, samples);
  }
  return kExitOk;
}

RewardWeights parse_weights(const std::string& s) {
  std::vector<double> w;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      w.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw GaitError(ErrorCode::invalid_argument, "--weights: bad number '" + item + "'");
    }
  }
  if (w.size() != 3) throw GaitError(ErrorCode::invalid_argument, "--weights needs w1,w2,w3");
  return {w[0], w[1], w[2]};
}

template <int N>
Eigen::Matrix<double, N, 1> vec_from(const json& j, const std::string& what, int line) {
  if (!j.is_array() || static_cast<int>(j.size()) != N) {
    throw GaitError(ErrorCode::schema, "states line " + std::to_string(line) + ": " + what +
                                           " needs " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) v(i) = j[i].get<double>();
  return v;
}

int cmd_reward(const std::string& gait_path, const std::string& states_path,
               const std::string& weights, const std::string& out_path) {
  const RewardWeights w = parse_weights(weights);
  const GaitFile f = read_gait_file(gait_path);
  const RobotGait gait(f.x.curve, f.y.curve, f.stance_first);
  PhaseConfig cfg = phase_for_gait(f.x.t_ssp);
  // Stream legs are [left, right]; the first stance leg runs at phase offset 0.
  cfg.delta_tau = f.stance_first == Stance::left ? std::vector<double>{0.0, 0.5}
                                                 : std::vector<double>{0.5, 0.0};

  std::ifstream in(states_path);
  if (!in) throw GaitError(ErrorCode::io, "cannot open " + states_path);
  std::ofstream file_out;
  std::ostream* os = &std::cout;
  if (!out_path.empty() && out_path != "-") {
    file_out.open(out_path);
    if (!file_out) throw GaitError(ErrorCode::io, "cannot write " + out_path);
    os = &file_out;
  }
  *os << "t,r_vf,r_cs,r_track,total\n";
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw GaitError(ErrorCode::schema, "states line " + std::to_string(lineno) + ": " + e.what());
    }
    try {
      const double t = rec.at("t").get<double>();
      const json& forces = rec.at("forces");
      const json& vels = rec.at("vels");
      if (forces.size() != 2 || vels.size() != 2) {
        throw GaitError(ErrorCode::schema,
                        "states line " + std::to_string(lineno) + ": need two feet");
      }
      std::vector<FootState> feet(2);
      for (int i = 0; i < 2; ++i) {
        feet[i].force = vec_from<3>(forces[i], "force", lineno);
        feet[i].vel_xy = vec_from<2>(vels[i], "vel", lineno);
      }
      TrackPair pair;
      pair.q_actual = vec_from<12>(rec.at("q_actual"), "q_actual", lineno);
      pair.q_des = gait.at(t).q;
      const RewardBreakdown b = composite(t, feet, pair, cfg, w);
      *os << format9(t) << ',' << format9(b.r_vf) << ',' << format9(b.r_cs) << ','
          << format9(b.r_track) << ',' << format9(b.total) << '\n';
    } catch (const json::exception& e) {
      throw GaitError(ErrorCode::schema, "states line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return kExitOk;
}

struct BenchArgs {
  int k = 1000;
  double t_ssp = 0.4;
  double z0 = 0.825;
  std::uint64_t seed = 0;
  double vx_max = 1.2;
  double vy_max = 0.4;
  std::string model = "both";
};

struct BenchRow {
  std::string model;
  int feasible = 0;
  double total_s = 0.0;
  double median_ms = 0.0;
  std::uint64_t digest = 1469598103934665603ULL;
};

void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void mix_plan(std::uint64_t& h, const BezierCurve* c) {
  if (!c) {
    const char fail = 'F';
    mix(h, &fail, 1);
    return;
  }
  mix(h, c->control().data(), sizeof(double) * c->control().size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
BenchRow run_bench(const std::string& name, int k, double vmax, F&& plan_one) {
  BenchRow row;
  row.model = name;
  std::vector<double> times;
  times.reserve(k);
  for (int i = 0; i < k; ++i) {
    const double v = k == 1 ? 0.0 : -vmax + 2.0 * vmax * i / (k - 1);
    const auto t0 = std::chrono::steady_clock::now();
    std::optional<BezierCurve> curve = plan_one(v);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    times.push_back(dt);
    row.total_s += dt;
    if (curve) ++row.feasible;
    mix_plan(row.digest, curve ? &*curve : nullptr);
  }
  row.median_ms = 1e3 * median(times);
  return row;
}

int cmd_bench(const Common& common, const BenchArgs& a) {
  const LinkParams lp = resolve_link_params(common.params);
  if (a.k < 1) throw GaitError(ErrorCode::invalid_argument, "--k must be positive");
  std::vector<BenchRow> rows;
  if (a.model == "x" || a.model == "both") {
    rows.push_back(run_bench("alg1_x", a.k, a.vx_max, [&](double v) -> std::optional<BezierCurve> {
      GaitRequestX r;
      r.walking_speed = v;
      r.t_ssp = a.t_ssp;
      r.z0 = a.z0;
      r.search.seed = a.seed;
      try {
        return plan_x(r, lp).curve;
      } catch (const GaitError&) {
        return std::nullopt;
      }
    }));
  }
  if (a.model == "y" || a.model == "both") {
    rows.push_back(run_bench("alg2_y", a.k, a.vy_max, [&](double v) -> std::optional<BezierCurve> {
      GaitRequestY r;
      r.walking_speed = v;
      r.t_ssp = a.t_ssp;
      r.z0 = a.z0;
      r.search.seed = a.seed;
      try {
        return plan_y(r, lp).curve;
      } catch (const GaitError&) {
        return std::nullopt;
      }
    }));
  }
  std::cout << "model,K,feasible,total_s,median_ms,digest,kernels\n";
  for (const BenchRow& r : rows) {
    char digest[17];
    std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(r.digest));
    std::cout << r.model << ',' << a.k << ',' << r.feasible << ',' << format9(r.total_s) << ','
              << format9(r.median_ms) << ',' << digest << ',' << kernels::active().name << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"H-LIP gait planner"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--params", common.params,
                 "Robot parameter file (key = value); defaults to $HLIPGAIT_PARAMS, then built-in");

  PlanArgs pa;
  auto* plan = app.add_subcommand("plan", "Plan X and Y gaits and write a gait file");
  plan->add_option("--lx", pa.lx, "Sagittal step length (m)");
  plan->add_option("--vx", pa.vx, "Sagittal walking speed (m/s); with --lx sets t_ssp = L/V");
  plan->add_option("--vy", pa.vy, "Lateral walking speed (m/s)");
  plan->add_option("--t-ssp", pa.t_ssp, "Step period (s)")->check(CLI::PositiveNumber);
  plan->add_option("--z0", pa.z0, "CoM height (m)")->check(CLI::PositiveNumber);
  plan->add_option("--degree", pa.degree, "X Bezier degree")->check(CLI::Range(3, 30));
  plan->add_option("--degree-y", pa.degree_y, "Y Bezier degree")->check(CLI::Range(3, 30));
  plan->add_option("--seed", pa.seed, "Sampler seed");
  plan->add_option("--samples", pa.samples, "Sample budget")->check(CLI::PositiveNumber);
  plan->add_option("--radius", pa.radius, "Sampling radius (rad)")->check(CLI::NonNegativeNumber);
  plan->add_option("--stance", pa.stance, "First stance leg")->check(CLI::IsMember({"left", "right"}));
  plan->add_option("--out", pa.out, "Output gait file")->required();
  plan->add_flag("--timestamp", pa.timestamp, "Record creation time in provenance");
  plan->add_option("--embed-dt", pa.embed_dt, "Embed a sampled cycle at this step (s)")
      ->check(CLI::PositiveNumber);

  std::string verify_in;
  int grid = 1000;
  auto* verify = app.add_subcommand("verify", "Check a gait file against the theorem properties");
  verify->add_option("--in", verify_in, "Gait file")->required();
  verify->add_option("--grid", grid, "Grid points")->check(CLI::Range(2, 10000000));

  std::string export_in, export_out;
  double dt = 0.001;
  int cycles = 1;
  auto* exp = app.add_subcommand("export", "Sample the 12-joint trajectory to CSV");
  exp->add_option("--in", export_in, "Gait file")->required();
  exp->add_option("--dt", dt, "Sample step (s)");
  exp->add_option("--cycles", cycles, "Gait cycles")->check(CLI::PositiveNumber);
  exp->add_option("--out", export_out, "CSV file (default stdout)");

  std::string gait_path, states_path, weights = "-1,1,1", reward_out;
  auto* reward = app.add_subcommand("reward", "Score a state stream against a gait");
  reward->add_option("--gait", gait_path, "Gait file")->required();
  reward->add_option("--states", states_path, "Line-delimited JSON states")->required();
  reward->add_option("--weights", weights, "w_vf,w_cs,w_track");
  reward->add_option("--out", reward_out, "CSV file (default stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Planner latency over a sweep of walking speeds");
  bench->add_option("--k", ba.k, "Velocity samples per model")->check(CLI::PositiveNumber);
  bench->add_option("--t-ssp", ba.t_ssp, "Step period (s)")->check(CLI::PositiveNumber);
  bench->add_option("--z0", ba.z0, "CoM height (m)")->check(CLI::PositiveNumber);
  bench->add_option("--seed", ba.seed, "Sampler seed");
  bench->add_option("--vx-max", ba.vx_max, "Sagittal speed range bound (m/s)");
  bench->add_option("--vy-max", ba.vy_max, "Lateral speed range bound (m/s)");
  bench->add_option("--model", ba.model, "x, y or both")->check(CLI::IsMember({"x", "y", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(common, pa);
    if (*verify) return cmd_verify(common, verify_in, grid);
    if (*exp) return cmd_export(export_in, dt, cycles, export_out);
    if (*reward) return cmd_reward(gait_path, states_path, weights, reward_out);
    if (*bench) return cmd_bench(common, ba);
  } catch (const GaitError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}

#include "hlipgait/rewards.hpp"

#include <cmath>

#include "hlipgait/error.hpp"

namespace hlipgait {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_lengths(std::size_t feet, std::size_t c) {
  if (feet != c) {
    throw GaitError(ErrorCode::invalid_argument, "reward: foot and phase lists differ in length");
  }
}

}  // namespace

void PhaseConfig::validate() const {
  if (!(r_st > 0.0 && r_st < 1.0)) {
    throw GaitError(ErrorCode::invalid_argument, "stance ratio must lie in (0, 1)");
  }
  if (!(f_c > 0.0) || !std::isfinite(f_c)) {
    throw GaitError(ErrorCode::invalid_argument, "gait frequency must be positive");
  }
}

PhaseConfig phase_for_gait(double t_ssp) {
  PhaseConfig cfg;
  cfg.f_c = 1.0 / (2.0 * t_ssp);
  return cfg;
}

double warp_phase(double tau, double r_st) {
  if (tau <= r_st) return 0.5 * tau / r_st;
  return 0.5 + 0.5 * (tau - r_st) / (1.0 - r_st);
}

double phase_c(double t, int leg, const PhaseConfig& cfg) {
  cfg.validate();
  if (leg < 0 || leg >= cfg.n_leg()) {
    throw GaitError(ErrorCode::out_of_range, "phase_c: leg index out of range");
  }
  double tau = std::fmod(cfg.f_c * t + cfg.delta_tau[leg], 1.0);
  if (tau < 0.0) tau += 1.0;
  const double warped = warp_phase(tau, cfg.r_st);
  return 1.0 / (1.0 + std::exp(-10.0 * std::sin(2.0 * kPi * warped)));
}

int contact_s(const FootState& foot) { return foot.force.norm() > 5.0 ? 1 : 0; }

double reward_vf(const std::vector<FootState>& feet, const std::vector<double>& c) {
  check_lengths(feet.size(), c.size());
  double r = 0.0;
  for (std::size_t i = 0; i < feet.size(); ++i) {
    r += c[i] * (1.0 - std::exp(-feet[i].vel_xy.norm() / 1.25)) +
         (1.0 - c[i]) * (1.0 - std::exp(-feet[i].force.norm() / 50.0));
  }
  return r;
}

// Equal to 1 + 1.3 (2 c s - c - s) for s in {0, 1}, written so that the
// rounded value stays inside [-0.3, 1].
double reward_cs_leg(double c, int s) {
  if (s != 0 && s != 1) throw GaitError(ErrorCode::invalid_argument, "contact flag must be 0 or 1");
  const double match = s ? c : 1.0 - c;
  return -0.3 + 1.3 * match;
}

double reward_cs(const std::vector<FootState>& feet, const std::vector<double>& c) {
  check_lengths(feet.size(), c.size());
  double r = 0.0;
  for (std::size_t i = 0; i < feet.size(); ++i) r += reward_cs_leg(c[i], contact_s(feet[i]));
  return r;
}

double reward_track(const TrackPair& pair) {
  if (pair.q_des.size() != pair.q_actual.size()) {
    throw GaitError(ErrorCode::invalid_argument, "reward_track: joint vectors differ in length");
  }
  return std::exp(-2.0 * (pair.q_des - pair.q_actual).norm());
}

RewardBreakdown composite(double t, const std::vector<FootState>& feet, const TrackPair& pair,
                          const PhaseConfig& cfg, const RewardWeights& w) {
  std::vector<double> c(cfg.n_leg());
  for (int i = 0; i < cfg.n_leg(); ++i) c[i] = phase_c(t, i, cfg);
  RewardBreakdown b;
  b.r_vf = reward_vf(feet, c);
  b.r_cs = reward_cs(feet, c);
  b.r_track = reward_track(pair);
  b.total = w.vf * b.r_vf + w.cs * b.r_cs + w.track * b.r_track;
  return b;
}

}  // namespace hlipgait

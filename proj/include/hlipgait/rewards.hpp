#pragma once

#include <vector>

#include <Eigen/Core>

namespace hlipgait {

struct PhaseConfig {
  double f_c = 1.25;
  double r_st = 0.5;
  std::vector<double> delta_tau{0.0, 0.5};

  int n_leg() const { return static_cast<int>(delta_tau.size()); }
  void validate() const;
};

// Phase clock for a gait with the given step period: f_c = 1 / (2 t_ssp).
PhaseConfig phase_for_gait(double t_ssp);

struct FootState {
  Eigen::Vector3d force = Eigen::Vector3d::Zero();
  Eigen::Vector2d vel_xy = Eigen::Vector2d::Zero();
};

struct TrackPair {
  Eigen::VectorXd q_des;
  Eigen::VectorXd q_actual;
};

double warp_phase(double tau, double r_st);
double phase_c(double t, int leg, const PhaseConfig& cfg);
int contact_s(const FootState& foot);

double reward_vf(const std::vector<FootState>& feet, const std::vector<double>& c);
double reward_cs_leg(double c, int s);
double reward_cs(const std::vector<FootState>& feet, const std::vector<double>& c);
double reward_track(const TrackPair& pair);

struct RewardWeights {
  double vf = -1.0;
  double cs = 1.0;
  double track = 1.0;
};

struct RewardBreakdown {
  double r_vf = 0.0;
  double r_cs = 0.0;
  double r_track = 0.0;
  double total = 0.0;
};

RewardBreakdown composite(double t, const std::vector<FootState>& feet, const TrackPair& pair,
                          const PhaseConfig& cfg, const RewardWeights& weights = {});

}  // namespace hlipgait

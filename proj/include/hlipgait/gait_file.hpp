#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "hlipgait/planar_models.hpp"
#include "hlipgait/planner.hpp"
#include "hlipgait/report.hpp"
#include "hlipgait/retarget.hpp"

namespace hlipgait {

inline constexpr const char* kGaitSchema = "hlipgait.gait/1";

struct GaitFile {
  LinkParams robot;
  PlanX x;
  PlanY y;
  Stance stance_first = Stance::right;
  std::optional<std::string> created;  // ISO-8601, only when requested
  std::optional<double> trajectory_dt; // embed a sampled cycle when set
};

nlohmann::json to_json(const GaitFile& file);
GaitFile gait_from_json(const nlohmann::json& j);

void write_gait_file(const std::string& path, const GaitFile& file);
GaitFile read_gait_file(const std::string& path);

nlohmann::json to_json(const VerifyReport& report);
nlohmann::json to_json(const LinkParams& lp);
LinkParams link_params_from_json(const nlohmann::json& j);

// "%.9g"
std::string format9(double v);
// Rounds to 9 significant digits, for JSON reports.
double round9(double v);

// t, 12 positions, 12 velocities; 9 significant digits.
void write_trajectory_csv(std::ostream& os, const std::vector<GaitSample>& samples);

}  // namespace hlipgait

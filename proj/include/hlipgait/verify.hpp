#pragma once

#include <functional>

#include "hlipgait/hlip.hpp"
#include "hlipgait/planner.hpp"
#include "hlipgait/report.hpp"

namespace hlipgait {

VerifyReport verify_x(const PlanX& plan, const LinkParams& lp, const HlipParams& hlip,
                      int grid = 1000, const VerifyTolerances& tol = {});

// Uses plan.legs for the Y leg lengths.
VerifyReport verify_y(const PlanY& plan, const LinkParams& lp, const HlipParams& hlip,
                      int grid = 1000, const VerifyTolerances& tol = {});

struct ComSample {
  double p = 0.0;  // horizontal CoM offset from the stance foot
  double v = 0.0;
};

struct Deviation {
  double position = 0.0;
  double velocity = 0.0;
};

// Compares a CoM trajectory on [0, hlip.t_ssp] against the pendulum flow
// launched from its own state at t = 0.
Deviation hlip_consistency(const std::function<ComSample(double)>& com, const HlipParams& hlip,
                           int grid = 1000);
Deviation hlip_consistency(const PlanX& plan, const LinkParams& lp, const HlipParams& hlip,
                           int grid = 1000);
Deviation hlip_consistency(const PlanY& plan, const LinkParams& lp, const HlipParams& hlip,
                           int grid = 1000);

}  // namespace hlipgait

#include "hlipgait/hlip.hpp"

#include <cmath>
#include <string>

#include "hlipgait/error.hpp"

namespace hlipgait {

double HlipParams::lambda() const { return std::sqrt(g / z0); }

void HlipParams::validate() const {
  if (!(z0 > 0.0) || !(g > 0.0) || !(t_ssp > 0.0) || !std::isfinite(z0) ||
      !std::isfinite(g) || !std::isfinite(t_ssp)) {
    throw GaitError(ErrorCode::invalid_argument,
                    "hlip params need finite z0 > 0, g > 0, t_ssp > 0");
  }
}

HlipState ssp_flow_any(const HlipState& state, const HlipParams& params, double t) {
  const double lam = params.lambda();
  const double ch = std::cosh(lam * t);
  const double sh = std::sinh(lam * t);
  return {state.p * ch + state.v / lam * sh, state.p * lam * sh + state.v * ch};
}

HlipState ssp_flow(const HlipState& state, const HlipParams& params, double t) {
  params.validate();
  if (!std::isfinite(state.p) || !std::isfinite(state.v) || !std::isfinite(t)) {
    throw GaitError(ErrorCode::invalid_argument, "ssp_flow: non-finite input");
  }
  if (t < 0.0 || t > params.t_ssp) {
    throw GaitError(ErrorCode::out_of_range,
                    "ssp_flow: t = " + std::to_string(t) + " outside [0, t_ssp]");
  }
  return ssp_flow_any(state, params, t);
}

StepCoeffs step_coeffs(const HlipParams& params) {
  params.validate();
  const double lam = params.lambda();
  const double x = lam * params.t_ssp;
  // 1 - cosh(x) = -2 sinh^2(x/2) avoids cancellation for short steps.
  const double sh = std::sinh(0.5 * x);
  return {-2.0 * sh * sh, std::sinh(x) / lam};
}

double step_length_from_final(const HlipState& final_state, const HlipParams& params) {
  const StepCoeffs c = step_coeffs(params);
  return c.t1 * final_state.p + c.t2 * final_state.v;
}

}  // namespace hlipgait

#pragma once

namespace hlipgait {

struct HlipParams {
  double z0 = 0.856;
  double g = 9.81;
  double t_ssp = 0.4;

  // Always derived, so it can never drift from z0 and g.
  double lambda() const;
  void validate() const;
};

struct HlipState {
  double p = 0.0;
  double v = 0.0;
};

struct StepCoeffs {
  double t1 = 0.0;
  double t2 = 0.0;
};

// Closed-form single-support flow on [0, t_ssp].
HlipState ssp_flow(const HlipState& state, const HlipParams& params, double t);

// Same flow without the time-range check; negative t flows backward.
HlipState ssp_flow_any(const HlipState& state, const HlipParams& params, double t);

StepCoeffs step_coeffs(const HlipParams& params);

double step_length_from_final(const HlipState& final_state, const HlipParams& params);

// Impact map: the double-support phase is instantaneous and (p, v) are continuous.
inline HlipState impact_transition(const HlipState& pre) { return pre; }

// Re-express the state relative to the new support point after a step of length L.
inline HlipState relabel_support(const HlipState& pre, double step_length) {
  return {pre.p - step_length, pre.v};
}

}  // namespace hlipgait

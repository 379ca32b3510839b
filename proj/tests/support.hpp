#pragma once

// Shared fixtures: the default construction (A = [[2,1],[1,1]] in both
// factors, roof 1 + 0.2 cos(2 pi u1), marked orbits at the fixed point and
// through (2/5, 1/5)).

#include "tclab/config.hpp"
#include "tclab/ergodic.hpp"
#include "tclab/lyapunov.hpp"

namespace tclab::testing {

inline FlowSpec default_flow() {
  return FlowSpec::make({{{2, 1}, {1, 1}}}, 0.2, {1, 0});
}

inline PeriodicOrbit fixed_point_orbit(const FlowSpec& spec) {
  return make_orbit(spec, {0, 0, 1});
}

inline PeriodicOrbit five_cycle_orbit(const FlowSpec& spec) {
  return make_orbit(spec, {2, 1, 5});
}

inline BumpSpec default_bump(const FlowSpec& spec, double delta = 0.05, double radius = 0.1) {
  return make_bump_spec(spec, delta, radius, fixed_point_orbit(spec), five_cycle_orbit(spec));
}

inline TimeChangedAction default_action(double delta = 0.05, double h = 1e-2) {
  TimeChangedAction tca;
  tca.spec1 = default_flow();
  tca.spec2 = default_flow();
  tca.cocycle = CocycleSpec{default_bump(tca.spec1, delta), default_bump(tca.spec2, delta), h,
                            Coupling::both};
  return tca;
}

inline TimeChangedAction product_action(double h = 1e-2) { return default_action(0.0, h); }

inline TimeChangedAction skew_action(double delta = 0.05, double h = 1e-2) {
  const FlowSpec spec = default_flow();
  return build_skew_example(spec, spec, default_bump(spec, delta), h);
}

// A point with both factors far from every bump tube (base near (1/2, 1/2)).
inline ProductPoint far_point() {
  return {{{0.5, 0.52}, 0.3}, {{0.48, 0.5}, 0.4}};
}

}  // namespace tclab::testing

#pragma once

#include <cstdint>

#include "tclab/flow_spec.hpp"
#include "tclab/geometry.hpp"

namespace tclab {

/** Point of the mapping torus: base u on T^2 and roof coordinate tau in
    [0, r(u)). The identification (u, r(u)) ~ (A u, 0) is applied eagerly. */
struct SuspensionPoint {
  TorusPoint base{};
  double tau = 0.0;
};

struct FlowResult {
  SuspensionPoint point;
  std::int64_t crossings = 0;  // signed number of roof identifications applied
};

// Advances tau by t, applying the roof identification (and its inverse for
// t < 0) as many times as needed. Total in t and x.
FlowResult flow_with_crossings(const FlowSpec& spec, double t, const SuspensionPoint& x);

inline SuspensionPoint flow(const FlowSpec& spec, double t, const SuspensionPoint& x) {
  return flow_with_crossings(spec, t, x).point;
}

inline std::int64_t crossing_count(const FlowSpec& spec, double t, const SuspensionPoint& x) {
  return flow_with_crossings(spec, t, x).crossings;
}

// ||df_t | E^u||(x) in the quotient by the flow direction: exactly
// lambda^(crossing count). The stable growth is the reciprocal under time
// reversal.
inline double unstable_growth(const FlowSpec& spec, double t, const SuspensionPoint& x) {
  return std::pow(spec.expanding_eigenvalue,
                  static_cast<double>(crossing_count(spec, t, x)));
}

// log of the above; safe for horizons where lambda^n overflows.
inline double log_unstable_growth(const FlowSpec& spec, double t, const SuspensionPoint& x) {
  return spec.log_expanding_eigenvalue * static_cast<double>(crossing_count(spec, t, x));
}

/** Chart distance between suspension points: Euclidean distance in (u, tau)
    coordinates, minimized over torus translations and over pushing either
    point once through the roof identification (in both directions). The roof
    representatives matter only near a crossing; without them the distance
    would jump there. */
double suspension_dist(const FlowSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q);

// Chart difference q - p (6 entries per factor caller packs), minimized over
// the same representatives as suspension_dist. Returns (du1, du2, dtau).
struct ChartDiff {
  double du1 = 0.0, du2 = 0.0, dtau = 0.0;
  double norm2() const { return du1 * du1 + du2 * du2 + dtau * dtau; }
};
ChartDiff suspension_diff(const FlowSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q);

}  // namespace tclab

#pragma once

#include "tclab/periodic_orbit.hpp"

namespace tclab {

/** C-infinity cutoff profile: b(d) = 1 for d <= 1/2, b(d) = 0 for d >= 1,
    normalized smooth step in between (flat to all orders at both plateau
    edges). */
double bump_profile(double d);

/** Bump function u(x) = delta * B_plus(x) - delta * B_minus(x), equal to
    +delta within R/2 of the plus orbit, -delta within R/2 of the minus orbit,
    and 0 farther than R from both. The R-tubes of the two orbits must be
    disjoint, so |u| <= delta everywhere (tighter than the 2*delta budget the
    construction is allowed).

    B combines the profile over the orbit's chart segments and their roof
    representatives multiplicatively, B = 1 - prod (1 - b(d_i/R)). Where at
    most one segment is within R this equals b(dist_to_orbit/R); where the
    roof representatives overlap the product form stays smooth while the
    min-distance composition has derivative kinks that degrade the cocycle
    quadrature by two orders of magnitude. */
struct BumpSpec {
  double delta = 0.05;
  double tube_radius = 0.1;
  PeriodicOrbit plus_orbit;
  PeriodicOrbit minus_orbit;

  double value(const FlowSpec& spec, const SuspensionPoint& x) const;

  // +1 on the plus orbit, -1 on the minus orbit, 0 off both (tol 1e-9).
  int orbit_of(const FlowSpec& spec, const SuspensionPoint& x) const;
};

/** Validates tube disjointness (min pairwise sample distance > 2R with the
    orbits resampled to spacing <= R/4) and returns the spec. Throws
    std::invalid_argument on overlapping tubes. */
BumpSpec make_bump_spec(const FlowSpec& spec, double delta, double tube_radius,
                        PeriodicOrbit plus_orbit, PeriodicOrbit minus_orbit);

// The min pairwise sample distance used by the disjointness check.
double min_tube_sample_distance(const BumpSpec& bump);

}  // namespace tclab

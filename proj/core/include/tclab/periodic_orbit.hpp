#pragma once

#include <vector>

#include "tclab/flow_spec.hpp"
#include "tclab/suspension.hpp"

namespace tclab {

/** Periodic orbit of the suspension flow over a rational base point.
    Periodicity of the seed under the base map is exact (integer arithmetic);
    the flow period is the sum of the roof over the base orbit. */
struct PeriodicOrbit {
  RationalPoint seed{};
  int map_period = 0;
  double flow_period = 0.0;

  std::vector<RationalPoint> base_orbit;   // exact, length map_period
  std::vector<TorusPoint> bases;           // base_orbit as doubles
  std::vector<double> roofs;               // r(bases[i])
  std::vector<double> cum_roof;            // prefix sums, size map_period + 1
  std::vector<SuspensionPoint> samples;    // fixed arc-time spacing along the orbit
  double sample_spacing = 0.0;

  // Expansion rate per unit flow time: k log(lambda) / P.
  double unit_time_exponent(const FlowSpec& spec) const {
    return static_cast<double>(map_period) * spec.log_expanding_eigenvalue / flow_period;
  }

  bool contains(const RationalPoint& p) const;

  // Point on the orbit at arc time g from (seed, 0), g taken mod the period.
  SuspensionPoint at_arc_time(double g) const;

  // Segment index and offset for an arc time (g reduced mod period first).
  std::pair<int, double> locate_arc_time(double g) const;

  // Exact number of roof crossings when advancing arc time g0 by T. Flowing
  // the chart point in doubles drifts off the orbit after ~30 crossings
  // (hyperbolicity amplifies rounding), this does not.
  std::int64_t crossings_along(double g0, double T) const;

  void resample(double spacing);
};

/** Enumerates rational torus points with denominator <= max_denominator,
    iterates the base map until return, and deduplicates. Sorted by map period,
    then by seed. Exact integer arithmetic throughout. */
std::vector<PeriodicOrbit> find_periodic_orbits(const FlowSpec& spec, int max_denominator,
                                                double sample_spacing = 0.025);

// Builds the single orbit through a given rational point.
PeriodicOrbit make_orbit(const FlowSpec& spec, const RationalPoint& seed,
                         double sample_spacing = 0.025);

/** Distance from x to the orbit: minimum over the orbit's chart segments
    {u_i} x [0, r_i] and over the roof-identification representatives of x of
    the Euclidean (u, tau)-chart distance. This is the exact limit of the
    orbit-sample minimum as the sampling spacing goes to zero. */
double dist_to_orbit(const FlowSpec& spec, const PeriodicOrbit& orbit, const SuspensionPoint& x);

// As above but capped: returns cap early when no segment can beat it.
double dist_to_orbit_capped(const FlowSpec& spec, const PeriodicOrbit& orbit,
                            const SuspensionPoint& x, double cap);

// Arc time of x on the orbit, or a negative value if x is farther than tol.
double arc_time_on_orbit(const FlowSpec& spec, const PeriodicOrbit& orbit,
                         const SuspensionPoint& x, double tol);

}  // namespace tclab

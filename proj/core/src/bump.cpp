#include "tclab/bump.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tclab {

double bump_profile(double d) {
  if (d <= 0.5) return 1.0;
  if (d >= 1.0) return 0.0;
  // Normalized smooth step on the transition window, w in (0, 1).
  const double w = 2.0 - 2.0 * d;
  const double g = std::exp(-1.0 / w);
  const double gc = std::exp(-1.0 / (1.0 - w));
  return g / (g + gc);
}

namespace {

// 1 - prod over (segment, representative) pairs of (1 - b(d/R)). Exactly 1 on
// the R/2-tube, exactly 0 outside the R-tube, C-infinity across the roof
// overlaps.
double tube_profile(const FlowSpec& spec, const PeriodicOrbit& orbit, const SuspensionPoint& x,
                    double radius) {
  const double r2 = radius * radius;
  SuspensionPoint reps[3];
  reps[0] = x;
  reps[1] = {spec.apply_map(x.base), x.tau - spec.roof(x.base)};
  const TorusPoint v = spec.apply_map_inverse(x.base);
  reps[2] = {v, x.tau + spec.roof(v)};

  double complement = 1.0;
  for (const auto& rep : reps) {
    for (int i = 0; i < orbit.map_period; ++i) {
      const double dd2 = torus_dist2(rep.base, orbit.bases[i]);
      if (dd2 >= r2) continue;
      const double over = rep.tau - orbit.roofs[i];
      const double hinge = std::max({0.0, over, -rep.tau});
      const double d2 = dd2 + hinge * hinge;
      if (d2 >= r2) continue;
      const double b = bump_profile(std::sqrt(d2) / radius);
      if (b == 1.0) return 1.0;  // inside the R/2 plateau
      complement *= 1.0 - b;
    }
  }
  return 1.0 - complement;
}

}  // namespace

double BumpSpec::value(const FlowSpec& spec, const SuspensionPoint& x) const {
  if (delta == 0.0) return 0.0;
  return delta * (tube_profile(spec, plus_orbit, x, tube_radius) -
                  tube_profile(spec, minus_orbit, x, tube_radius));
}

int BumpSpec::orbit_of(const FlowSpec& spec, const SuspensionPoint& x) const {
  constexpr double tol = 1e-9;
  if (dist_to_orbit_capped(spec, plus_orbit, x, 2.0 * tol) < tol) return 1;
  if (dist_to_orbit_capped(spec, minus_orbit, x, 2.0 * tol) < tol) return -1;
  return 0;
}

double min_tube_sample_distance(const BumpSpec& bump) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : bump.plus_orbit.samples) {
    for (const auto& q : bump.minus_orbit.samples) {
      const double dt = p.tau - q.tau;
      const double d2 = torus_dist2(p.base, q.base) + dt * dt;
      if (d2 < best) best = d2;
    }
  }
  return std::sqrt(best);
}

BumpSpec make_bump_spec(const FlowSpec& spec, double delta, double tube_radius,
                        PeriodicOrbit plus_orbit, PeriodicOrbit minus_orbit) {
  (void)spec;
  if (!(tube_radius > 0.0)) throw std::invalid_argument("BumpSpec: tube radius must be positive");
  if (delta < 0.0) throw std::invalid_argument("BumpSpec: delta must be non-negative");
  const double spacing = tube_radius / 4.0;
  if (plus_orbit.sample_spacing > spacing) plus_orbit.resample(spacing);
  if (minus_orbit.sample_spacing > spacing) minus_orbit.resample(spacing);
  BumpSpec bump{delta, tube_radius, std::move(plus_orbit), std::move(minus_orbit)};
  // The open R-tubes (the bump supports) are disjoint iff the orbits are at
  // least 2R apart; the default orbit pair sits at exactly 2R, touching
  // closures with disjoint open supports.
  const double sep = min_tube_sample_distance(bump);
  if (sep < 2.0 * tube_radius - 1e-12) {
    std::ostringstream msg;
    msg << "BumpSpec: tubes overlap, min sample distance " << sep << " < 2R = "
        << 2.0 * tube_radius;
    throw std::invalid_argument(msg.str());
  }
  return bump;
}

}  // namespace tclab

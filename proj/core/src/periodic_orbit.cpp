#include "tclab/periodic_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tclab {

namespace {

using Key = std::tuple<std::int64_t, std::int64_t, std::int64_t>;  // (den, nx, ny) reduced

RationalPoint reduce(const RationalPoint& p) {
  std::int64_t g = std::gcd(std::gcd(p.nx, p.ny), p.den);
  if (g == 0) g = p.den;
  return {p.nx / g, p.ny / g, p.den / g};
}

Key key_of(const RationalPoint& p) {
  const RationalPoint r = reduce(p);
  return {r.den, r.nx, r.ny};
}

bool rational_less(const RationalPoint& a, const RationalPoint& b) {
  if (a.nx * b.den != b.nx * a.den) return a.nx * b.den < b.nx * a.den;
  return a.ny * b.den < b.ny * a.den;
}

PeriodicOrbit build_orbit(const FlowSpec& spec, const std::vector<RationalPoint>& cycle,
                          double sample_spacing) {
  PeriodicOrbit orbit;
  // Canonical seed: smallest point of the cycle; keeps discovery deterministic.
  std::size_t best = 0;
  for (std::size_t i = 1; i < cycle.size(); ++i)
    if (rational_less(cycle[i], cycle[best])) best = i;
  orbit.seed = cycle[best];
  orbit.map_period = static_cast<int>(cycle.size());
  orbit.base_orbit.reserve(cycle.size());
  RationalPoint p = orbit.seed;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    orbit.base_orbit.push_back(p);
    p = spec.apply_map(p);
  }
  orbit.bases.reserve(cycle.size());
  orbit.roofs.reserve(cycle.size());
  orbit.cum_roof.reserve(cycle.size() + 1);
  orbit.cum_roof.push_back(0.0);
  for (const auto& q : orbit.base_orbit) {
    const TorusPoint u = q.to_point();
    orbit.bases.push_back(u);
    orbit.roofs.push_back(spec.roof(u));
    orbit.cum_roof.push_back(orbit.cum_roof.back() + orbit.roofs.back());
  }
  orbit.flow_period = orbit.cum_roof.back();
  orbit.resample(sample_spacing);
  return orbit;
}

std::vector<RationalPoint> cycle_through(const FlowSpec& spec, const RationalPoint& start) {
  std::vector<RationalPoint> cycle;
  RationalPoint p = start;
  const std::int64_t guard = start.den * start.den + 1;
  do {
    cycle.push_back(p);
    p = spec.apply_map(p);
    if (static_cast<std::int64_t>(cycle.size()) > guard)
      throw std::logic_error("periodic orbit iteration exceeded den^2 bound");
  } while (!(p.nx == start.nx && p.ny == start.ny));
  return cycle;
}

}  // namespace

bool PeriodicOrbit::contains(const RationalPoint& p) const {
  for (const auto& q : base_orbit)
    if (q.same_point(p)) return true;
  return false;
}

std::pair<int, double> PeriodicOrbit::locate_arc_time(double g) const {
  g = std::fmod(g, flow_period);
  if (g < 0.0) g += flow_period;
  auto it = std::upper_bound(cum_roof.begin(), cum_roof.end(), g);
  int idx = static_cast<int>(it - cum_roof.begin()) - 1;
  if (idx < 0) idx = 0;
  if (idx >= map_period) idx = map_period - 1;
  double tau = g - cum_roof[idx];
  if (tau >= roofs[idx]) {
    tau -= roofs[idx];
    idx = (idx + 1) % map_period;
  }
  if (tau < 0.0) tau = 0.0;
  return {idx, tau};
}

SuspensionPoint PeriodicOrbit::at_arc_time(double g) const {
  const auto [idx, tau] = locate_arc_time(g);
  return {bases[idx], tau};
}

std::int64_t PeriodicOrbit::crossings_along(double g0, double T) const {
  auto index_of = [&](double g) {
    const double winds = std::floor(g / flow_period);
    const double rem = g - winds * flow_period;
    const int seg = locate_arc_time(rem).first;
    return static_cast<std::int64_t>(winds) * map_period + seg;
  };
  return index_of(g0 + T) - index_of(g0);
}

void PeriodicOrbit::resample(double spacing) {
  const int n = std::max(1, static_cast<int>(std::ceil(flow_period / spacing)));
  sample_spacing = flow_period / n;
  samples.clear();
  samples.reserve(n);
  for (int j = 0; j < n; ++j) samples.push_back(at_arc_time(j * sample_spacing));
}

std::vector<PeriodicOrbit> find_periodic_orbits(const FlowSpec& spec, int max_denominator,
                                                double sample_spacing) {
  if (max_denominator < 2)
    throw std::invalid_argument("find_periodic_orbits: max_denominator must be >= 2");
  std::set<Key> visited;
  std::vector<PeriodicOrbit> orbits;
  for (std::int64_t den = 1; den <= max_denominator; ++den) {
    for (std::int64_t i = 0; i < den; ++i) {
      for (std::int64_t j = 0; j < den; ++j) {
        const RationalPoint p = reduce({i, j, den});
        if (visited.count(key_of(p))) continue;
        const auto cycle = cycle_through(spec, p);
        for (const auto& q : cycle) visited.insert(key_of(q));
        orbits.push_back(build_orbit(spec, cycle, sample_spacing));
      }
    }
  }
  std::sort(orbits.begin(), orbits.end(), [](const PeriodicOrbit& a, const PeriodicOrbit& b) {
    if (a.map_period != b.map_period) return a.map_period < b.map_period;
    return rational_less(a.seed, b.seed);
  });
  return orbits;
}

PeriodicOrbit make_orbit(const FlowSpec& spec, const RationalPoint& seed, double sample_spacing) {
  return build_orbit(spec, cycle_through(spec, reduce(seed)), sample_spacing);
}

namespace {

// Representatives of x for distance queries: x itself plus one push through
// the roof identification in each direction.
struct Reps {
  SuspensionPoint r[3];
};

Reps reps_of(const FlowSpec& spec, const SuspensionPoint& x) {
  Reps out;
  out.r[0] = x;
  out.r[1] = {spec.apply_map(x.base), x.tau - spec.roof(x.base)};
  const TorusPoint v = spec.apply_map_inverse(x.base);
  out.r[2] = {v, x.tau + spec.roof(v)};
  return out;
}

}  // namespace

double dist_to_orbit_capped(const FlowSpec& spec, const PeriodicOrbit& orbit,
                            const SuspensionPoint& x, double cap) {
  const Reps reps = reps_of(spec, x);
  double best2 = cap * cap;
  for (const auto& rep : reps.r) {
    for (int i = 0; i < orbit.map_period; ++i) {
      const double dd2 = torus_dist2(rep.base, orbit.bases[i]);
      if (dd2 >= best2) continue;
      const double over = rep.tau - orbit.roofs[i];
      const double hinge = std::max({0.0, over, -rep.tau});
      const double d2 = dd2 + hinge * hinge;
      if (d2 < best2) best2 = d2;
    }
  }
  return std::sqrt(best2);
}

double dist_to_orbit(const FlowSpec& spec, const PeriodicOrbit& orbit, const SuspensionPoint& x) {
  // Any point is within half a diagonal plus a roof of any orbit.
  return dist_to_orbit_capped(spec, orbit, x, 4.0 + orbit.flow_period);
}

double arc_time_on_orbit(const FlowSpec& spec, const PeriodicOrbit& orbit,
                         const SuspensionPoint& x, double tol) {
  const Reps reps = reps_of(spec, x);
  double best2 = tol * tol;
  double arc = -1.0;
  for (const auto& rep : reps.r) {
    for (int i = 0; i < orbit.map_period; ++i) {
      const double dd2 = torus_dist2(rep.base, orbit.bases[i]);
      if (dd2 > best2) continue;
      const double over = rep.tau - orbit.roofs[i];
      const double hinge = std::max({0.0, over, -rep.tau});
      const double d2 = dd2 + hinge * hinge;
      if (d2 <= best2) {
        best2 = d2;
        const double tau = std::clamp(rep.tau, 0.0, orbit.roofs[i]);
        arc = orbit.cum_roof[i] + tau;
      }
    }
  }
  return arc;
}

}  // namespace tclab

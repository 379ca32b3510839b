#include "tclab/suspension.hpp"

#include <array>
#include <cmath>

namespace tclab {

FlowResult flow_with_crossings(const FlowSpec& spec, double t, const SuspensionPoint& x) {
  TorusPoint u = x.base;
  double tau = x.tau + t;
  std::int64_t crossings = 0;
  double r = spec.roof(u);
  while (tau >= r) {
    tau -= r;
    u = spec.apply_map(u);
    r = spec.roof(u);
    ++crossings;
  }
  while (tau < 0.0) {
    u = spec.apply_map_inverse(u);
    tau += spec.roof(u);
    --crossings;
  }
  return {{u, tau}, crossings};
}

namespace {

double plain_dist2(const SuspensionPoint& p, const SuspensionPoint& q) {
  const double dt = p.tau - q.tau;
  return torus_dist2(p.base, q.base) + dt * dt;
}

// Push once up through the roof: (u, tau) -> (A u, tau - r(u)), tau' < 0.
SuspensionPoint push_up(const FlowSpec& spec, const SuspensionPoint& p) {
  return {spec.apply_map(p.base), p.tau - spec.roof(p.base)};
}

// Push once down: (u, tau) -> (A^-1 u, tau + r(A^-1 u)), tau' >= r'.
SuspensionPoint push_down(const FlowSpec& spec, const SuspensionPoint& p) {
  const TorusPoint v = spec.apply_map_inverse(p.base);
  return {v, p.tau + spec.roof(v)};
}

}  // namespace

double suspension_dist(const FlowSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q) {
  double best = plain_dist2(p, q);
  best = std::min(best, plain_dist2(push_up(spec, p), q));
  best = std::min(best, plain_dist2(push_down(spec, p), q));
  best = std::min(best, plain_dist2(p, push_up(spec, q)));
  best = std::min(best, plain_dist2(p, push_down(spec, q)));
  return std::sqrt(best);
}

ChartDiff suspension_diff(const FlowSpec& spec, const SuspensionPoint& p, const SuspensionPoint& q) {
  const std::array<std::pair<SuspensionPoint, SuspensionPoint>, 5> pairs{{
      {p, q},
      {push_up(spec, p), q},
      {push_down(spec, p), q},
      {p, push_up(spec, q)},
      {p, push_down(spec, q)},
  }};
  ChartDiff best;
  double best2 = -1.0;
  for (const auto& [a, b] : pairs) {
    ChartDiff d;
    d.du1 = wrap_diff(b.base.x - a.base.x);
    d.du2 = wrap_diff(b.base.y - a.base.y);
    d.dtau = b.tau - a.tau;
    const double n2 = d.norm2();
    if (best2 < 0.0 || n2 < best2) {
      best2 = n2;
      best = d;
    }
  }
  return best;
}

}  // namespace tclab
